#include <doctest.h>

#include "divlink/error.h"
#include "divlink/invariants.h"

using namespace divlink;

namespace {

LaurentPolynomial T(std::initializer_list<std::pair<int, long>> terms, Variable v = Variable::T) {
  LaurentPolynomial p(v);
  for (auto [e, c] : terms) p += LaurentPolynomial::monomial(v, e, c);
  return p;
}

// Sign from the label pattern of a one-component PD code: the over strand runs l -> j
// when j follows l (mod 2n).
PDCode knot_pd(std::vector<std::array<std::size_t, 4>> tuples) {
  PDCode pd;
  pd.components = 1;
  const std::size_t m = 2 * tuples.size();
  for (const auto& x : tuples) {
    const std::size_t j = x[1], l = x[3];
    const bool positive = (l % m) + 1 == j;
    pd.crossings.push_back({x, positive ? 1 : -1});
  }
  return pd;
}

GaussCode gauss_from_pd(const PDCode& pd) {
  // One component: walk labels 1..2n, recording the passage that each label enters.
  GaussCode g;
  g.components.resize(1);
  const std::size_t m = 2 * pd.crossings.size();
  for (std::size_t step = 0; step < m; ++step) {
    const std::size_t in = step == 0 ? m : step;
    for (std::size_t c = 0; c < pd.crossings.size(); ++c) {
      const auto& x = pd.crossings[c];
      const std::size_t over_in = x.sign > 0 ? x.labels[3] : x.labels[1];
      if (x.labels[0] == in) g.components[0].push_back({false, c + 1, x.sign});
      if (over_in == in) g.components[0].push_back({true, c + 1, x.sign});
    }
  }
  return g;
}

const PDCode kRightTrefoil = knot_pd({{{4, 2, 5, 1}}, {{6, 4, 1, 3}}, {{2, 6, 3, 5}}});
const PDCode kFigureEight = knot_pd({{{4, 2, 5, 1}}, {{8, 6, 1, 5}}, {{6, 3, 7, 4}}, {{2, 7, 3, 8}}});
const PDCode kFiveTwo = knot_pd({{{1, 5, 2, 4}}, {{3, 9, 4, 8}}, {{5, 1, 6, 10}}, {{7, 3, 8, 2}}, {{9, 7, 10, 6}}});

}  // namespace

TEST_CASE("Laurent polynomial arithmetic") {
  auto p = T({{1, 1}, {0, -1}});
  auto q = T({{1, 1}, {0, 1}});
  CHECK(p * q == T({{2, 1}, {0, -1}}));
  CHECK((p * q).divided_by(q) == p);
  CHECK_THROWS_AS(T({{2, 1}, {0, 1}}).divided_by(p), Error);
  CHECK((p - p).is_zero());
  CHECK(T({{6, 1}, {5, -1}, {3, 1}, {1, -1}, {0, 1}}).to_string() == "t^6 - t^5 + t^3 - t + 1");
  CHECK(T({{2, -1}, {-1, 3}}).to_string() == "-t^2 + 3t^-1");
  CHECK(T({{3, 1}, {-8, -1}}, Variable::SqrtT).to_string() == "t^(3/2) - t^-4");
  CHECK(T({{2, 1}, {0, -1}}).evaluate(-1) == 0);
  CHECK(T({{-1, 1}}).evaluate(2) == Rational(1, 2));
}

TEST_CASE("normalize_alexander") {
  const auto target = T({{2, 1}, {1, -1}, {0, 1}});
  CHECK(normalize_alexander(target) == target);
  CHECK(normalize_alexander(T({{3, -1}, {2, 1}, {1, -1}})) == target);
  CHECK(normalize_alexander(T({{-2, 1}, {-1, -1}, {0, 1}})) == target);
  CHECK(normalize_alexander(normalize_alexander(T({{5, -2}, {4, 7}}))) == normalize_alexander(T({{5, -2}, {4, 7}})));
  CHECK_THROWS_AS(normalize_alexander(LaurentPolynomial(Variable::T)), Error);
}

TEST_CASE("right-handed trefoil") {
  CHECK(alexander_fox(kRightTrefoil) == T({{2, 1}, {1, -1}, {0, 1}}));
  // t + t^3 - t^4 in doubled exponents.
  CHECK(jones_kauffman(kRightTrefoil) == T({{2, 1}, {6, 1}, {8, -1}}, Variable::SqrtT));
  const auto nabla = conway_skein(gauss_from_pd(kRightTrefoil));
  CHECK(nabla == T({{2, 1}, {0, 1}}, Variable::Z));
  CHECK(alexander_from_conway(nabla) == T({{2, 1}, {1, -1}, {0, 1}}));
  CHECK(writhe_and_linking(kRightTrefoil).writhe == 3);
}

TEST_CASE("mirror inverts the Jones variable") {
  for (const PDCode* pd : {&kRightTrefoil, &kFigureEight, &kFiveTwo}) {
    CHECK(jones_kauffman(mirror(*pd)) == jones_kauffman(*pd).inverted());
    CHECK(alexander_fox(mirror(*pd)) == alexander_fox(*pd));
  }
  CHECK(jones_kauffman(mirror(kRightTrefoil)) == T({{-2, 1}, {-6, 1}, {-8, -1}}, Variable::SqrtT));
}

TEST_CASE("figure-eight knot") {
  CHECK(alexander_fox(kFigureEight) == T({{2, 1}, {1, -3}, {0, 1}}));
  CHECK(jones_kauffman(kFigureEight) == T({{-4, 1}, {-2, -1}, {0, 1}, {2, -1}, {4, 1}}, Variable::SqrtT));
  const auto nabla = conway_skein(gauss_from_pd(kFigureEight));
  CHECK(nabla == T({{0, 1}, {2, -1}}, Variable::Z));
  CHECK(alexander_from_conway(nabla) == alexander_fox(kFigureEight));
}

TEST_CASE("five-two knot") {
  // 2t^2 - 3t + 2
  CHECK(alexander_fox(kFiveTwo) == T({{2, 2}, {1, -3}, {0, 2}}));
  CHECK(alexander_from_conway(conway_skein(gauss_from_pd(kFiveTwo))) == alexander_fox(kFiveTwo));
  CHECK(alexander_fox(kFiveTwo).evaluate(-1) == 7);
}

TEST_CASE("trivial diagrams") {
  PDCode unknot;
  unknot.components = 1;
  CHECK(alexander_fox(unknot) == T({{0, 1}}));
  CHECK(jones_kauffman(unknot) == T({{0, 1}}, Variable::SqrtT));
  GaussCode g;
  g.components.resize(1);
  CHECK(conway_skein(g) == T({{0, 1}}, Variable::Z));
  g.components.resize(2);
  CHECK(conway_skein(g).is_zero());
  PDCode unlink;
  unlink.components = 2;
  // <two loops> = d, so V = -t^(1/2) - t^(-1/2).
  CHECK(jones_kauffman(unlink) == T({{1, -1}, {-1, -1}}, Variable::SqrtT));
  CHECK_THROWS_AS(alexander_fox(unlink), Error);
}

TEST_CASE("Conway to Alexander substitution") {
  CHECK(alexander_from_conway(T({{0, 1}}, Variable::Z)) == T({{0, 1}}));
  CHECK(alexander_from_conway(T({{1, 1}}, Variable::Z)) == T({{1, -1}, {0, 1}}));
  CHECK(alexander_from_conway(T({{2, 1}, {0, 1}}, Variable::Z)) == T({{2, 1}, {1, -1}, {0, 1}}));
}

TEST_CASE("resource caps") {
  CHECK_THROWS_AS(jones_kauffman(kFigureEight, 3), Error);
  CHECK_THROWS_AS(conway_skein(gauss_from_pd(kFigureEight), 3), Error);
}
