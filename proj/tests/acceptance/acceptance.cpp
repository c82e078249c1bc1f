// Prints one PASS/FAIL line per acceptance criterion; exits 1 if any fails.

#include "divlink/cli.h"
#include "divlink/diagram.h"
#include "divlink/dsl.h"
#include "divlink/error.h"
#include "divlink/generators.h"
#include "divlink/invariants.h"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <numeric>
#include <optional>
#include <random>
#include <sstream>

using namespace divlink;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    if (pass) detail = what;
    pass = false;
  }
};

LaurentPolynomial t_poly(std::initializer_list<std::pair<int, int>> terms) {
  LaurentPolynomial p(Variable::T);
  for (auto [e, c] : terms) p += LaurentPolynomial::monomial(Variable::T, e, c);
  return p;
}

// (t^pq - 1)(t - 1) / ((t^p - 1)(t^q - 1))
LaurentPolynomial torus_alexander(int p, int q) {
  auto binom = [](int n) { return t_poly({{n, 1}, {0, -1}}); };
  return normalize_alexander((binom(p * q) * binom(1)).divided_by(binom(p) * binom(q)));
}

std::vector<std::pair<std::string, Divide>> corpus() {
  std::vector<std::pair<std::string, Divide>> out;
  for (const auto& name : canned_names()) out.emplace_back(name, canned(name));
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}, {2, 4}})
    out.emplace_back("torus " + std::to_string(p) + "," + std::to_string(q), torus_divide({p, q}));
  return out;
}

struct Invariants {
  std::size_t components = 0;
  LinkingMatrix linking;
  LaurentPolynomial conway{Variable::Z};
  std::optional<LaurentPolynomial> alexander;
  std::optional<LaurentPolynomial> jones;

  friend bool operator==(const Invariants&, const Invariants&) = default;
};

Invariants invariants_of(const Divide& d) {
  const LinkDiagram g = build_diagram(d);
  Invariants inv;
  inv.components = g.component_count();
  inv.linking = writhe_and_linking(g).linking;
  inv.conway = conway_skein(g);
  if (inv.components == 1) inv.alexander = alexander_fox(g);
  if (g.crossing_count() <= kDefaultJonesCap) inv.jones = jones_kauffman(g);
  return inv;
}

std::optional<Divide> jitter(const Divide& d, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 50; ++attempt) {
    std::vector<Branch> branches = d.branches();
    for (Branch& b : branches)
      for (Point2& v : b.vertices) {
        v.x += Rational(static_cast<long>(rng() % 201) - 100, 100000);
        v.y += Rational(static_cast<long>(rng() % 201) - 100, 100000);
      }
    try {
      Divide j = validate(branches);
      if (genericity_check(j).generic && j.double_points().size() == d.double_points().size()) return j;
    } catch (const Error&) {
    }
  }
  return std::nullopt;
}

Outcome e6_pipeline() {
  Outcome o;
  const auto start = std::chrono::steady_clock::now();
  const auto dir = std::filesystem::temp_directory_path() / "divide-acceptance";
  std::filesystem::create_directories(dir);
  const std::string path = (dir / "e6.divide").string();
  std::ostringstream out, err;
  o.require(cli::run({"gen", "torus", "3", "4", "-o", path}, out, err) == 0, "gen torus 3 4 failed: " + err.str());
  if (!o.pass) return o;
  const Divide d = validate(read_document_file(path).branches);
  o.require(d.double_points().size() == 3, "expected 3 double points");
  const LinkDiagram g = build_diagram(d);
  o.require(g.component_count() == 1, "expected one component");
  const LaurentPolynomial a = alexander_fox(g);
  o.require(a.to_string() == "t^6 - t^5 + t^3 - t + 1", "Alexander " + a.to_string());
  o.require(a == torus_alexander(3, 4), "differs from the torus formula");
  o.require(abs(a.evaluate(Rational(-1))) == 3, "determinant is not 3");
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  o.require(secs < 2.0, "took " + std::to_string(secs) + " s");
  std::filesystem::remove_all(dir);
  if (o.pass) o.detail = "Alexander " + a.to_string() + ", det 3, " + std::to_string(secs).substr(0, 5) + " s";
  return o;
}

Outcome torus_family() {
  Outcome o;
  for (auto [p, q] : std::vector<std::pair<int, int>>{{2, 3}, {2, 5}, {2, 7}, {3, 4}, {3, 5}}) {
    const LinkDiagram g = build_diagram(torus_divide({p, q}));
    const std::string tag = "T(" + std::to_string(p) + "," + std::to_string(q) + ")";
    o.require(g.component_count() == 1, tag + " is not a knot");
    if (g.component_count() == 1) o.require(alexander_fox(g) == torus_alexander(p, q), tag + " Alexander mismatch");
  }
  o.require(build_diagram(torus_divide({2, 4})).component_count() == std::gcd(2, 4), "T(2,4) components");
  if (o.pass) o.detail = "5 knots match the formula, T(2,4) has 2 components";
  return o;
}

Outcome calibration() {
  Outcome o;
  const LinkDiagram hopf = build_diagram(canned("cross"));
  const WritheAndLinking hw = writhe_and_linking(hopf);
  o.require(hopf.component_count() == 2 && hw.linking[0][1] == 1, "Hopf linking number is not +1");
  o.require(conway_skein(hopf).to_string() == "z", "Hopf Conway is not z");
  const LinkDiagram trefoil = build_diagram(torus_divide({2, 3}));
  // Right-handed trefoil: t + t^3 - t^4.
  LaurentPolynomial right(Variable::SqrtT);
  right += LaurentPolynomial::monomial(Variable::SqrtT, 2, 1);
  right += LaurentPolynomial::monomial(Variable::SqrtT, 6, 1);
  right += LaurentPolynomial::monomial(Variable::SqrtT, 8, -1);
  o.require(jones_kauffman(trefoil) == right, "trefoil is not right-handed");
  const cli::SelftestReport r = cli::selftest();
  o.require(r.ok(), "selftest failed");
  Convention inverted = default_convention();
  inverted.slope = Convention::Slope::LargerOver;
  o.require(!cli::selftest(inverted).ok(), "selftest does not detect drift");
  if (o.pass) o.detail = "Hopf lk +1, nabla z, right trefoil, unique convention " + convention_name(default_convention());
  return o;
}

std::vector<Divide> random_corpus() {
  std::vector<Divide> out;
  for (std::uint64_t seed = 0; seed < 50; ++seed) out.push_back(random_divide(1 + static_cast<int>(seed % 6), 6, seed));
  return out;
}

Outcome component_law() {
  Outcome o;
  for (const Divide& d : random_corpus())
    o.require(build_diagram(d).component_count() == d.branches().size(), "component count differs from branch count");
  if (o.pass) o.detail = "50 random divides";
  return o;
}

Outcome involution() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& [name, d] : corpus()) {
    o.require(involution_check(build_diagram(d)), name);
    ++n;
  }
  for (const Divide& d : random_corpus()) {
    o.require(involution_check(build_diagram(d)), "random divide");
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " diagrams";
  return o;
}

Outcome isotopy() {
  Outcome o;
  const Invariants e6 = invariants_of(canned("e6"));
  for (const char* alt : {"e6-alt1", "e6-alt2"}) {
    const Invariants other = invariants_of(canned(alt));
    o.require(other.alexander == e6.alexander && other.conway == e6.conway, std::string(alt) + " differs from e6");
  }
  for (const auto& [name, d] : corpus()) {
    const Invariants base = invariants_of(d);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto j = jitter(d, seed);
      o.require(j.has_value(), name + ": no valid jitter");
      if (!j) continue;
      o.require(invariants_of(*j) == base, name + ": jitter changed the invariants");
      o.require(invariants_of(perturb_to_generic(*j, Rational(1, 4096), seed)) == base,
                name + ": perturbation changed the invariants");
    }
  }
  if (o.pass) o.detail = "E6 trio agree; 3 seeds over " + std::to_string(corpus().size()) + " divides";
  return o;
}

Outcome oracle_agreement() {
  Outcome o;
  std::size_t n = 0;
  for (const auto& [name, d] : corpus()) {
    const LinkDiagram g = build_diagram(d);
    if (g.component_count() != 1) continue;
    o.require(alexander_fox(g) == alexander_from_conway(conway_skein(g)), name);
    ++n;
  }
  if (o.pass) o.detail = std::to_string(n) + " knots";
  return o;
}

Outcome property_suite() {
  Outcome o;
  for (const auto& [name, d] : corpus()) {
    const LinkDiagram g = build_diagram(d);
    const LaurentPolynomial nabla = conway_skein(g);
    const int parity = static_cast<int>((g.component_count() + 1) % 2);
    for (const auto& [e, c] : nabla.terms()) o.require(e % 2 == parity, name + ": Conway parity");
    if (g.component_count() != 1) continue;
    const LaurentPolynomial a = alexander_fox(g);
    const int lo = a.min_exponent(), hi = a.max_exponent();
    for (int e = lo; e <= hi; ++e) o.require(a.coefficient(e) == a.coefficient(lo + hi - e), name + ": not palindromic");
    const Rational one = a.evaluate(Rational(1));
    o.require(one == 1 || one == -1, name + ": Delta(1) is not a unit");
    // Every corpus divide is connected, so every knot is fibered.
    const Integer lead = a.coefficient(hi);
    o.require(lead == 1 || lead == -1, name + ": not monic");
  }
  if (o.pass) o.detail = "palindromic, unit at 1, parity, monic";
  return o;
}

Outcome ac_10_145() {
  Outcome o;
  const LinkDiagram g = build_diagram(canned("ac-10-145"));
  o.require(g.component_count() == 1, "not a knot");
  if (!o.pass) return o;
  // Knot table value for 10_145.
  const LaurentPolynomial expected = t_poly({{4, 1}, {3, 1}, {2, -3}, {1, 1}, {0, 1}});
  const LaurentPolynomial a = alexander_fox(g);
  o.require(a == expected, "Alexander " + a.to_string());
  if (o.pass) o.detail = "Alexander " + a.to_string();
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"E6 pipeline", e6_pipeline},
      {"torus family", torus_family},
      {"calibration", calibration},
      {"component-count law", component_law},
      {"involution symmetry", involution},
      {"isotopy and perturbation invariance", isotopy},
      {"Fox and Conway agree", oracle_agreement},
      {"property suite", property_suite},
      {"10_145 divide", ac_10_145},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = e.what();
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " " << i + 1 << " " << criteria[i].first << ": " << o.detail << "\n";
    if (!o.pass) ++failed;
  }
  return failed == 0 ? 0 : 1;
}
