#include "divlink/invariants.h"

#include "divlink/error.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <unordered_map>

namespace divlink {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) x = parent_[x] = parent_[parent_[x]];
    return x;
  }
  void unite(std::size_t a, std::size_t b) { parent_[find(a)] = find(b); }

 private:
  std::vector<std::size_t> parent_;
};

struct Strands {
  std::size_t under_in, under_out, over_in, over_out;
};

Strands strands(const PDCrossing& x) {
  const auto& l = x.labels;
  return x.sign > 0 ? Strands{l[0], l[2], l[3], l[1]} : Strands{l[0], l[2], l[1], l[3]};
}

// Component index of every edge label, tracing successor edges through crossings.
std::vector<std::size_t> label_components(const PDCode& pd, std::size_t& count) {
  const std::size_t labels = 2 * pd.crossings.size();
  std::vector<std::size_t> next(labels + 1, 0);
  for (const PDCrossing& x : pd.crossings) {
    const Strands s = strands(x);
    next[s.under_in] = s.under_out;
    next[s.over_in] = s.over_out;
  }
  std::vector<std::size_t> comp(labels + 1, SIZE_MAX);
  count = 0;
  for (std::size_t l = 1; l <= labels; ++l) {
    if (comp[l] != SIZE_MAX) continue;
    std::size_t cur = l;
    while (comp[cur] == SIZE_MAX) {
      comp[cur] = count;
      cur = next[cur];
    }
    ++count;
  }
  return comp;
}

LaurentPolynomial t_poly(std::initializer_list<std::pair<int, long>> terms) {
  LaurentPolynomial p(Variable::T);
  for (auto [e, c] : terms) p += LaurentPolynomial::monomial(Variable::T, e, c);
  return p;
}

// Fraction-free elimination; entries must be polynomials with exact divisions.
LaurentPolynomial bareiss_determinant(std::vector<std::vector<LaurentPolynomial>> m) {
  const std::size_t n = m.size();
  if (n == 0) return LaurentPolynomial(Variable::T, 1);
  LaurentPolynomial prev(Variable::T, 1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k].is_zero()) {
      std::size_t swap_row = k + 1;
      while (swap_row < n && m[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return LaurentPolynomial(Variable::T);
      std::swap(m[k], m[swap_row]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        LaurentPolynomial v = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = v.divided_by(prev);
      }
      m[i][k] = LaurentPolynomial(Variable::T);
    }
    prev = m[k][k];
  }
  LaurentPolynomial det = m[n - 1][n - 1];
  return negate ? -det : det;
}

}  // namespace

std::size_t component_count(const LinkDiagram& diagram) { return diagram.component_count(); }

WritheAndLinking writhe_and_linking(const LinkDiagram& diagram) {
  WritheAndLinking out;
  const std::size_t n = diagram.component_count();
  out.linking.assign(n, std::vector<int>(n, 0));
  std::vector<std::vector<int>> twice(n, std::vector<int>(n, 0));
  for (const Crossing& x : diagram.crossings) {
    out.writhe += x.sign;
    const std::size_t a = x.over.component, b = x.under.component;
    if (a == b) continue;
    twice[a][b] += x.sign;
    twice[b][a] += x.sign;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.linking[i][j] = twice[i][j] / 2;
  return out;
}

WritheAndLinking writhe_and_linking(const PDCode& pd) {
  WritheAndLinking out;
  std::size_t traced = 0;
  const auto comp = label_components(pd, traced);
  const std::size_t n = traced + pd.free_loops;
  out.linking.assign(n, std::vector<int>(n, 0));
  std::vector<std::vector<int>> twice(n, std::vector<int>(n, 0));
  for (const PDCrossing& x : pd.crossings) {
    out.writhe += x.sign;
    const Strands s = strands(x);
    const std::size_t a = comp[s.over_in], b = comp[s.under_in];
    if (a == b) continue;
    twice[a][b] += x.sign;
    twice[b][a] += x.sign;
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out.linking[i][j] = twice[i][j] / 2;
  return out;
}

LaurentPolynomial normalize_alexander(const LaurentPolynomial& p) {
  if (p.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "cannot normalize the zero polynomial");
  LaurentPolynomial out = p.shifted(-p.min_exponent());
  if (out.coefficient(0) < 0) out = -out;
  return out;
}

LaurentPolynomial alexander_fox(const PDCode& pd) {
  std::size_t traced = 0;
  label_components(pd, traced);
  if (traced + pd.free_loops > 1 || (pd.crossings.empty() && pd.components > 1))
    throw Error(ErrorCode::MultiComponent, "Fox calculus here handles knots only; use the Conway polynomial");
  const std::size_t n = pd.crossings.size();
  if (n == 0) return LaurentPolynomial(Variable::T, 1);

  // Wirtinger arcs: edges joined along over-passages.
  UnionFind arcs(2 * n + 1);
  for (const PDCrossing& x : pd.crossings) {
    const Strands s = strands(x);
    arcs.unite(s.over_in, s.over_out);
  }
  std::map<std::size_t, std::size_t> arc_index;
  for (std::size_t l = 1; l <= 2 * n; ++l) arc_index.emplace(arcs.find(l), arc_index.size());
  if (arc_index.size() != n) throw Error(ErrorCode::DegenerateDiagram, "arc count differs from crossing count");

  std::vector<std::vector<LaurentPolynomial>> matrix(n, std::vector<LaurentPolynomial>(n, LaurentPolynomial(Variable::T)));
  for (std::size_t r = 0; r < n; ++r) {
    const PDCrossing& x = pd.crossings[r];
    const Strands s = strands(x);
    const std::size_t i = arc_index.at(arcs.find(s.under_in));
    const std::size_t j = arc_index.at(arcs.find(s.under_out));
    const std::size_t k = arc_index.at(arcs.find(s.over_in));
    if (x.sign > 0) {
      matrix[r][k] += t_poly({{0, 1}, {1, -1}});
      matrix[r][i] += t_poly({{1, 1}});
      matrix[r][j] += t_poly({{0, -1}});
    } else {
      matrix[r][i] += t_poly({{0, 1}});
      matrix[r][k] += t_poly({{1, 1}, {0, -1}});
      matrix[r][j] += t_poly({{1, -1}});
    }
  }
  matrix.pop_back();
  for (auto& row : matrix) row.pop_back();
  LaurentPolynomial det = bareiss_determinant(std::move(matrix));
  if (det.is_zero()) throw Error(ErrorCode::DegenerateDiagram, "Alexander minor vanishes");
  return normalize_alexander(det);
}

LaurentPolynomial alexander_fox(const LinkDiagram& diagram) {
  if (diagram.component_count() != 1)
    throw Error(ErrorCode::MultiComponent, "Fox calculus here handles knots only; use the Conway polynomial");
  return alexander_fox(pd_code(diagram));
}

namespace {

// Gauss-code diagram state for the skein recursion.
struct SkeinState {
  struct P {
    int crossing;
    bool over;
    int sign;
  };
  std::vector<std::vector<P>> components;
};

// Relabels crossings by first appearance so equivalent states share a key.
std::string canonical_key(const SkeinState& s) {
  std::unordered_map<int, int> relabel;
  std::string key;
  for (const auto& comp : s.components) {
    key += '|';
    for (const auto& p : comp) {
      auto [it, inserted] = relabel.try_emplace(p.crossing, static_cast<int>(relabel.size()));
      key += std::to_string(it->second);
      key += p.over ? 'o' : 'u';
      key += p.sign > 0 ? '+' : '-';
      key += ',';
    }
  }
  return key;
}

// Removes crossings whose two passages are adjacent on one component.
void remove_kinks(SkeinState& s) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (auto& comp : s.components) {
      const std::size_t k = comp.size();
      for (std::size_t i = 0; i < k && !changed; ++i) {
        const std::size_t j = (i + 1) % k;
        if (i != j && comp[i].crossing == comp[j].crossing) {
          if (j == 0) {
            comp.pop_back();
            comp.erase(comp.begin());
          } else {
            comp.erase(comp.begin() + static_cast<long>(i), comp.begin() + static_cast<long>(i) + 2);
          }
          changed = true;
        }
      }
      if (changed) break;
    }
  }
}

// Cancels bigons: two crossings met consecutively by one strand that is over at
// both, and consecutively by another strand that is under at both.
bool remove_bigon(SkeinState& s) {
  std::map<int, std::vector<std::pair<std::size_t, std::size_t>>> where;
  for (std::size_t c = 0; c < s.components.size(); ++c)
    for (std::size_t i = 0; i < s.components[c].size(); ++i) where[s.components[c][i].crossing].emplace_back(c, i);
  auto other = [&](int crossing, std::size_t c, std::size_t i) {
    const auto& w = where.at(crossing);
    return w[0] == std::make_pair(c, i) ? w[1] : w[0];
  };
  auto adjacent = [&](std::pair<std::size_t, std::size_t> a, std::pair<std::size_t, std::size_t> b) {
    if (a.first != b.first) return false;
    const std::size_t k = s.components[a.first].size();
    return (a.second + 1) % k == b.second || (b.second + 1) % k == a.second;
  };
  for (std::size_t c = 0; c < s.components.size(); ++c) {
    auto& comp = s.components[c];
    const std::size_t k = comp.size();
    if (k < 2) continue;
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t j = (i + 1) % k;
      const auto& a = comp[i];
      const auto& b = comp[j];
      if (a.crossing == b.crossing || !a.over || !b.over || a.sign == b.sign) continue;
      const auto oa = other(a.crossing, c, i);
      const auto ob = other(b.crossing, c, j);
      if (!adjacent(oa, ob)) continue;
      if (oa.first == c && (oa.second == i || oa.second == j || ob.second == i || ob.second == j)) continue;
      std::vector<std::pair<std::size_t, std::size_t>> gone{{c, i}, {c, j}, oa, ob};
      std::sort(gone.rbegin(), gone.rend());
      for (const auto& [gc, gi] : gone) s.components[gc].erase(s.components[gc].begin() + static_cast<long>(gi));
      return true;
    }
  }
  return false;
}

void simplify(SkeinState& s) {
  do remove_kinks(s);
  while (remove_bigon(s));
}

// True if some proper nonempty subset of components shares no crossing with the rest.
bool is_split(const SkeinState& s) {
  const std::size_t n = s.components.size();
  if (n < 2) return false;
  std::map<int, std::vector<std::size_t>> where;
  for (std::size_t c = 0; c < n; ++c)
    for (const auto& p : s.components[c]) where[p.crossing].push_back(c);
  UnionFind uf(n);
  for (const auto& [id, comps] : where) uf.unite(comps.front(), comps.back());
  for (std::size_t c = 1; c < n; ++c)
    if (uf.find(c) != uf.find(0)) return true;
  return false;
}

class ConwaySolver {
 public:
  explicit ConwaySolver(std::size_t cap) : cap_(cap) {}

  LaurentPolynomial solve(SkeinState s) {
    simplify(s);
    if (is_split(s)) return LaurentPolynomial(Variable::Z);
    const std::string key = canonical_key(s);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    LaurentPolynomial result = compute(s);
    memo_.emplace(key, result);
    return result;
  }

 private:
  LaurentPolynomial compute(const SkeinState& s) {
    // First crossing met as an under-passage before its over-passage.
    std::map<int, bool> seen;
    int target = 0;
    bool found = false;
    for (const auto& comp : s.components) {
      for (const auto& p : comp) {
        if (seen.count(p.crossing)) continue;
        seen[p.crossing] = true;
        if (!p.over) {
          target = p.crossing;
          found = true;
          break;
        }
      }
      if (found) break;
    }
    if (!found) {
      // Descending diagram: an unlink.
      return s.components.size() == 1 ? LaurentPolynomial(Variable::Z, 1) : LaurentPolynomial(Variable::Z);
    }

    int sign = 0;
    SkeinState switched = s;
    for (auto& comp : switched.components)
      for (auto& p : comp)
        if (p.crossing == target) {
          sign = p.sign;
          p.over = !p.over;
          p.sign = -p.sign;
        }
    SkeinState smoothed = smooth(s, target);
    const LaurentPolynomial z = LaurentPolynomial::monomial(Variable::Z, 1);
    // nabla(L+) - nabla(L-) = z nabla(L0)
    LaurentPolynomial rest = solve(std::move(switched));
    LaurentPolynomial zero = z * solve(std::move(smoothed));
    return sign > 0 ? rest + zero : rest - zero;
  }

  static SkeinState smooth(const SkeinState& s, int target) {
    std::vector<std::pair<std::size_t, std::size_t>> at;  // (component, index)
    for (std::size_t c = 0; c < s.components.size(); ++c)
      for (std::size_t i = 0; i < s.components[c].size(); ++i)
        if (s.components[c][i].crossing == target) at.emplace_back(c, i);
    SkeinState out;
    auto cyclic_between = [&](std::size_t c, std::size_t from, std::size_t to) {
      // Passages strictly after `from` up to strictly before `to`, cyclically.
      std::vector<SkeinState::P> seq;
      const auto& comp = s.components[c];
      const std::size_t k = comp.size();
      for (std::size_t i = (from + 1) % k; i != to; i = (i + 1) % k) seq.push_back(comp[i]);
      return seq;
    };
    if (at[0].first == at[1].first) {
      const std::size_t c = at[0].first;
      for (std::size_t other = 0; other < s.components.size(); ++other)
        if (other != c) out.components.push_back(s.components[other]);
      out.components.push_back(cyclic_between(c, at[0].second, at[1].second));
      out.components.push_back(cyclic_between(c, at[1].second, at[0].second));
    } else {
      const std::size_t c1 = at[0].first, c2 = at[1].first;
      for (std::size_t other = 0; other < s.components.size(); ++other)
        if (other != c1 && other != c2) out.components.push_back(s.components[other]);
      auto merged = cyclic_between(c1, at[0].second, at[0].second);
      auto tail = cyclic_between(c2, at[1].second, at[1].second);
      merged.insert(merged.end(), tail.begin(), tail.end());
      out.components.push_back(std::move(merged));
    }
    return out;
  }

  std::size_t cap_;
  std::unordered_map<std::string, LaurentPolynomial> memo_;
};

}  // namespace

LaurentPolynomial conway_skein(const GaussCode& gauss, std::size_t cap) {
  if (gauss.crossing_count() > cap)
    throw Error(ErrorCode::ResourceLimit, "Conway skein limited to " + std::to_string(cap) +
                                              " crossings; diagram has " + std::to_string(gauss.crossing_count()));
  SkeinState s;
  for (const auto& comp : gauss.components) {
    std::vector<SkeinState::P> seq;
    for (const GaussPassage& p : comp)
      seq.push_back({static_cast<int>(p.crossing), p.over, p.sign});
    s.components.push_back(std::move(seq));
  }
  ConwaySolver solver(cap);
  return solver.solve(std::move(s));
}

LaurentPolynomial conway_skein(const LinkDiagram& diagram, std::size_t cap) {
  return conway_skein(gauss_code(diagram), cap);
}

LaurentPolynomial alexander_from_conway(const LaurentPolynomial& nabla) {
  if (nabla.is_zero()) throw Error(ErrorCode::ZeroPolynomial, "Conway polynomial is zero");
  // z = s - 1/s with s = t^(1/2), computed in doubled exponents.
  const LaurentPolynomial z = LaurentPolynomial::monomial(Variable::SqrtT, 1) - LaurentPolynomial::monomial(Variable::SqrtT, -1);
  LaurentPolynomial s_poly(Variable::SqrtT);
  for (const auto& [e, c] : nabla.terms()) s_poly += LaurentPolynomial(Variable::SqrtT, c) * z.pow(static_cast<unsigned>(e));
  s_poly = s_poly.shifted(-s_poly.min_exponent());
  LaurentPolynomial t_form(Variable::T);
  for (const auto& [e, c] : s_poly.terms()) {
    if (e % 2 != 0) throw Error(ErrorCode::Internal, "mixed parity after Conway substitution");
    t_form += LaurentPolynomial::monomial(Variable::T, e / 2, c);
  }
  return normalize_alexander(t_form);
}

LaurentPolynomial jones_kauffman(const PDCode& pd, std::size_t cap) {
  const std::size_t n = pd.crossings.size();
  if (n > cap)
    throw Error(ErrorCode::ResourceLimit, "Kauffman bracket limited to " + std::to_string(cap) +
                                              " crossings; diagram has " + std::to_string(n));
  // Bracket in A: sum over states of A^(#A - #B) d^(loops - 1), d = -A^2 - A^-2.
  std::map<std::pair<int, std::size_t>, Integer> tally;  // (A-exponent, loops) -> count
  for (std::uint64_t state = 0; state < (std::uint64_t{1} << n); ++state) {
    UnionFind uf(2 * n + 1);
    int balance = 0;
    for (std::size_t c = 0; c < n; ++c) {
      const auto& l = pd.crossings[c].labels;
      if (state & (std::uint64_t{1} << c)) {
        uf.unite(l[0], l[3]);
        uf.unite(l[1], l[2]);
        --balance;
      } else {
        uf.unite(l[0], l[1]);
        uf.unite(l[2], l[3]);
        ++balance;
      }
    }
    std::size_t loops = pd.free_loops;
    for (std::size_t l = 1; l <= 2 * n; ++l)
      if (uf.find(l) == l) ++loops;
    if (n == 0) loops = std::max<std::size_t>(pd.components, 1);
    tally[{balance, loops}] += 1;
  }
  const LaurentPolynomial d = -(LaurentPolynomial::monomial(Variable::A, 2) + LaurentPolynomial::monomial(Variable::A, -2));
  LaurentPolynomial bracket(Variable::A);
  for (const auto& [key, count] : tally)
    bracket += LaurentPolynomial::monomial(Variable::A, key.first, count) * d.pow(static_cast<unsigned>(key.second - 1));
  int writhe = 0;
  for (const PDCrossing& x : pd.crossings) writhe += x.sign;
  // V = (-A^3)^(-w) <D>, then A = t^(-1/4): A^k becomes t^(-k/4), doubled exponent -k/2.
  LaurentPolynomial scaled = bracket.shifted(-3 * writhe);
  if (writhe % 2 != 0) scaled = -scaled;
  std::map<int, Integer> terms;
  for (const auto& [e, c] : scaled.terms()) {
    if (e % 2 != 0) throw Error(ErrorCode::Internal, "odd A-exponent in the normalized bracket");
    terms[-e / 2] += c;
  }
  return LaurentPolynomial::from_terms(Variable::SqrtT, terms);
}

LaurentPolynomial jones_kauffman(const LinkDiagram& diagram, std::size_t cap) {
  return jones_kauffman(pd_code(diagram), cap);
}

PDCode mirror(const PDCode& pd) {
  PDCode out = pd;
  for (PDCrossing& x : out.crossings) {
    const auto l = x.labels;
    x.labels = x.sign > 0 ? std::array<std::size_t, 4>{l[3], l[0], l[1], l[2]}
                          : std::array<std::size_t, 4>{l[1], l[2], l[3], l[0]};
    x.sign = -x.sign;
  }
  return out;
}

}  // namespace divlink
