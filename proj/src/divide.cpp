#include "divlink/divide.h"

#include "divlink/error.h"
#include "divlink/geometry.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <tuple>

namespace divlink {

namespace {

struct SegmentEntry {
  std::size_t branch;
  std::size_t segment;
  const Point2* a;
  const Point2* b;
  Rational xmin;
  Rational xmax;
};

struct Contact {
  std::size_t branch_a, segment_a, branch_b, segment_b;
  Point2 point;
};

struct IntersectionScan {
  std::vector<DoublePoint> proper;
  std::vector<Contact> touches;
  std::vector<Contact> overlaps;
};

bool adjacent(const std::vector<Branch>& branches, const SegmentEntry& p, const SegmentEntry& q) {
  if (p.branch != q.branch) return false;
  const Branch& br = branches[p.branch];
  const std::size_t n = br.segment_count();
  const std::size_t i = std::min(p.segment, q.segment), j = std::max(p.segment, q.segment);
  if (j - i == 1) return true;
  return br.closed() && i == 0 && j == n - 1;
}

std::vector<SegmentEntry> collect_segments(const std::vector<Branch>& branches) {
  std::vector<SegmentEntry> out;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const Branch& br = branches[b];
    for (std::size_t s = 0; s < br.segment_count(); ++s) {
      const Point2& a = br.segment_start(s);
      const Point2& c = br.segment_end(s);
      out.push_back({b, s, &a, &c, std::min(a.x, c.x), std::max(a.x, c.x)});
    }
  }
  std::sort(out.begin(), out.end(), [](const SegmentEntry& l, const SegmentEntry& r) {
    int c = cmp(l.xmin, r.xmin);
    if (c != 0) return c < 0;
    return std::tie(l.branch, l.segment) < std::tie(r.branch, r.segment);
  });
  return out;
}

IntersectionScan scan_intersections(const std::vector<Branch>& branches) {
  IntersectionScan scan;
  const auto segs = collect_segments(branches);
  for (std::size_t i = 0; i < segs.size(); ++i) {
    for (std::size_t j = i + 1; j < segs.size() && segs[j].xmin <= segs[i].xmax; ++j) {
      const SegmentEntry& p = segs[i];
      const SegmentEntry& q = segs[j];
      if (adjacent(branches, p, q)) continue;
      auto hit = intersect_segments(*p.a, *p.b, *q.a, *q.b);
      using Kind = SegmentIntersection::Kind;
      if (hit.kind == Kind::None) continue;
      if (hit.kind == Kind::Proper) {
        DoublePoint dp;
        dp.position = hit.point;
        dp.incidences[0] = {p.branch, p.segment, hit.s};
        dp.incidences[1] = {q.branch, q.segment, hit.t};
        if (std::tie(dp.incidences[1].branch, dp.incidences[1].segment) <
            std::tie(dp.incidences[0].branch, dp.incidences[0].segment))
          std::swap(dp.incidences[0], dp.incidences[1]);
        scan.proper.push_back(std::move(dp));
      } else if (hit.kind == Kind::Touch) {
        scan.touches.push_back({p.branch, p.segment, q.branch, q.segment, hit.point});
      } else {
        scan.overlaps.push_back({p.branch, p.segment, q.branch, q.segment, {}});
      }
    }
  }
  std::sort(scan.proper.begin(), scan.proper.end(), [](const DoublePoint& l, const DoublePoint& r) {
    if (l.position != r.position) return l.position < r.position;
    return std::tie(l.incidences[0].branch, l.incidences[0].segment, l.incidences[1].branch,
                    l.incidences[1].segment) < std::tie(r.incidences[0].branch,
                                                        r.incidences[0].segment,
                                                        r.incidences[1].branch,
                                                        r.incidences[1].segment);
  });
  return scan;
}

std::string seg_label(std::size_t branch, std::size_t segment) {
  return "b" + std::to_string(branch) + ":s" + std::to_string(segment);
}

// Groups of proper crossings sharing one position (three or more segments concurrent).
std::vector<std::vector<std::size_t>> concurrent_groups(const std::vector<DoublePoint>& proper) {
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t i = 0; i < proper.size();) {
    std::size_t j = i + 1;
    while (j < proper.size() && proper[j].position == proper[i].position) ++j;
    if (j - i > 1) {
      std::vector<std::size_t> g;
      for (std::size_t k = i; k < j; ++k) g.push_back(k);
      groups.push_back(std::move(g));
    }
    i = j;
  }
  return groups;
}

void check_branch_shape(const std::vector<Branch>& branches) {
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const Branch& br = branches[b];
    const std::size_t n = br.vertices.size();
    const std::string name = "branch " + std::to_string(b);
    if (br.closed() ? n < 3 : n < 2)
      throw Error(ErrorCode::ImmersionViolation, name + " has too few vertices");
    for (std::size_t s = 0; s < br.segment_count(); ++s)
      if (br.segment_start(s) == br.segment_end(s))
        throw Error(ErrorCode::ImmersionViolation,
                    name + " repeats vertex " + std::to_string(s));
    // Fold-back: consecutive segments collinear and pointing in opposite directions.
    const std::size_t first = br.closed() ? 0 : 1;
    const std::size_t last = br.closed() ? n : n - 1;
    for (std::size_t v = first; v < last; ++v) {
      const Point2& prev = br.vertices[(v + n - 1) % n];
      const Point2& cur = br.vertices[v];
      const Point2& next = br.vertices[(v + 1) % n];
      const Point2 d1 = cur - prev, d2 = next - cur;
      if (sgn(cross(d1, d2)) == 0 && sgn(dot(d1, d2)) < 0)
        throw Error(ErrorCode::ImmersionViolation,
                    name + " folds back at vertex " + std::to_string(v));
    }
    for (std::size_t v = 0; v < n; ++v) {
      const Rational r2 = br.vertices[v].norm2();
      const bool endpoint = !br.closed() && (v == 0 || v + 1 == n);
      if (endpoint) {
        if (r2 < kAnnulusInnerSquared || r2 > kAnnulusOuterSquared)
          throw Error(ErrorCode::BoundaryViolation,
                      name + " endpoint " + to_string(br.vertices[v]) +
                          " is not in the boundary annulus");
      } else if (r2 >= kAnnulusInnerSquared) {
        throw Error(ErrorCode::BoundaryViolation,
                    name + " vertex " + to_string(br.vertices[v]) + " lies outside radius 0.98");
      }
    }
  }
}

std::vector<Tangency> scan_tangencies(const std::vector<Branch>& branches, bool strict) {
  std::vector<Tangency> out;
  for (std::size_t b = 0; b < branches.size(); ++b) {
    const Branch& br = branches[b];
    const std::size_t n = br.vertices.size();
    if (strict) {
      for (std::size_t s = 0; s < br.segment_count(); ++s)
        if (br.segment_start(s).x == br.segment_end(s).x)
          throw Error(ErrorCode::VerticalSegment, seg_label(b, s) + " is vertical");
    }
    const std::size_t first = br.closed() ? 0 : 1;
    const std::size_t last = br.closed() ? n : n - 1;
    for (std::size_t v = first; v < last; ++v) {
      const Rational& px = br.vertices[(v + n - 1) % n].x;
      const Rational& cx = br.vertices[v].x;
      const Rational& nx = br.vertices[(v + 1) % n].x;
      if (px > cx && nx > cx)
        out.push_back({b, v, TangencyKind::XMin, br.vertices[v]});
      else if (px < cx && nx < cx)
        out.push_back({b, v, TangencyKind::XMax, br.vertices[v]});
    }
  }
  std::sort(out.begin(), out.end(), [](const Tangency& l, const Tangency& r) {
    if (l.position != r.position) return l.position < r.position;
    return std::tie(l.branch, l.vertex) < std::tie(r.branch, r.vertex);
  });
  return out;
}

std::vector<DoublePoint> checked_double_points(const std::vector<Branch>& branches) {
  IntersectionScan scan = scan_intersections(branches);
  if (!scan.overlaps.empty()) {
    const Contact& c = scan.overlaps.front();
    throw Error(ErrorCode::TripleOrTangentIntersection,
                seg_label(c.branch_a, c.segment_a) + " overlaps " +
                    seg_label(c.branch_b, c.segment_b));
  }
  if (!scan.touches.empty()) {
    const Contact& c = scan.touches.front();
    throw Error(ErrorCode::VertexIntersection,
                seg_label(c.branch_a, c.segment_a) + " meets " +
                    seg_label(c.branch_b, c.segment_b) + " at vertex " + to_string(c.point));
  }
  if (auto groups = concurrent_groups(scan.proper); !groups.empty())
    throw Error(ErrorCode::TripleOrTangentIntersection,
                "three or more segments meet at " + to_string(scan.proper[groups[0][0]].position));
  return std::move(scan.proper);
}

bool ray_blocked_by(const Point2& p, const Point2& ray_end, const Point2& a, const Point2& b) {
  auto hit = intersect_segments(p, ray_end, a, b);
  using Kind = SegmentIntersection::Kind;
  if (hit.kind == Kind::None) return false;
  if (hit.kind == Kind::Touch && hit.point == p && (a == p || b == p)) return false;
  return true;
}

std::string endpoint_label(std::size_t branch, bool last) {
  return "b" + std::to_string(branch) + (last ? ":end" : ":start");
}

void append_common_violations(const std::vector<Branch>& branches,
                              const std::vector<DoublePoint>& dps,
                              const std::vector<Tangency>& tangencies, GenericityReport& report) {
  // (a) critical x-values pairwise distinct.
  std::vector<std::pair<Rational, std::string>> critical;
  for (const Tangency& t : tangencies)
    critical.emplace_back(t.position.x,
                          "tangency b" + std::to_string(t.branch) + ":v" + std::to_string(t.vertex));
  for (std::size_t i = 0; i < dps.size(); ++i)
    critical.emplace_back(dps[i].position.x, "double point " + to_string(dps[i].position));
  for (std::size_t b = 0; b < branches.size(); ++b) {
    if (branches[b].closed()) continue;
    critical.emplace_back(branches[b].vertices.front().x, "endpoint " + endpoint_label(b, false));
    critical.emplace_back(branches[b].vertices.back().x, "endpoint " + endpoint_label(b, true));
  }
  std::stable_sort(critical.begin(), critical.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });
  for (std::size_t i = 0; i < critical.size();) {
    std::size_t j = i + 1;
    while (j < critical.size() && critical[j].first == critical[i].first) ++j;
    if (j - i > 1) {
      Violation v{ViolationCode::SharedX, "critical points share x = " + to_string(critical[i].first),
                  {}};
      for (std::size_t k = i; k < j; ++k) v.elements.push_back(critical[k].second);
      report.violations.push_back(std::move(v));
    }
    i = j;
  }

  // (b) tangencies away from double points and the boundary.
  for (const Tangency& t : tangencies) {
    const std::string label = "tangency b" + std::to_string(t.branch) + ":v" + std::to_string(t.vertex);
    for (const DoublePoint& dp : dps)
      if (dp.position == t.position)
        report.violations.push_back(
            {ViolationCode::TangencyAtDouble, label + " coincides with a double point", {label}});
    const Branch& br = branches[t.branch];
    const bool at_end = !br.closed() && (t.vertex == 0 || t.vertex + 1 == br.vertices.size());
    if (at_end || t.position.norm2() >= kAnnulusInnerSquared)
      report.violations.push_back(
          {ViolationCode::TangencyAtBoundary, label + " lies on the boundary", {label}});
  }

  // (c) no vertical segments.
  for (std::size_t b = 0; b < branches.size(); ++b)
    for (std::size_t s = 0; s < branches[b].segment_count(); ++s)
      if (branches[b].segment_start(s).x == branches[b].segment_end(s).x)
        report.violations.push_back(
            {ViolationCode::VerticalSegment, seg_label(b, s) + " is vertical", {seg_label(b, s)}});

  // (d) free downward ray from each endpoint.
  for (std::size_t b = 0; b < branches.size(); ++b) {
    if (branches[b].closed()) continue;
    for (bool last : {false, true})
      if (!endpoint_ray_clear(branches, b, last))
        report.violations.push_back({ViolationCode::EndpointRayBlocked,
                                     "downward ray from " + endpoint_label(b, last) +
                                         " meets the divide",
                                     {endpoint_label(b, last)}});
  }
  report.generic = report.violations.empty();
}

using Signature = std::vector<std::array<std::size_t, 4>>;

Signature signature_of(const std::vector<DoublePoint>& dps) {
  Signature sig;
  for (const DoublePoint& dp : dps)
    sig.push_back({dp.incidences[0].branch, dp.incidences[0].segment, dp.incidences[1].branch,
                   dp.incidences[1].segment});
  std::sort(sig.begin(), sig.end());
  return sig;
}

bool perturbable(ErrorCode code) {
  return code == ErrorCode::TripleOrTangentIntersection || code == ErrorCode::VertexIntersection;
}

}  // namespace

std::string violation_code_name(ViolationCode code) {
  switch (code) {
    case ViolationCode::SharedX: return "SHARED_X";
    case ViolationCode::TangencyAtDouble: return "TANGENCY_AT_DOUBLE";
    case ViolationCode::TangencyAtBoundary: return "TANGENCY_AT_BOUNDARY";
    case ViolationCode::VerticalSegment: return "VERTICAL_SEGMENT";
    case ViolationCode::TriplePoint: return "TRIPLE_POINT";
    case ViolationCode::EndpointRayBlocked: return "ENDPOINT_RAY_BLOCKED";
    case ViolationCode::NonTransverse: return "NON_TRANSVERSE";
  }
  return "UNKNOWN";
}

std::size_t GenericityReport::count(ViolationCode code) const {
  return static_cast<std::size_t>(std::count_if(
      violations.begin(), violations.end(), [code](const Violation& v) { return v.code == code; }));
}

std::size_t Divide::open_branch_count() const {
  return static_cast<std::size_t>(std::count_if(branches_.begin(), branches_.end(),
                                                [](const Branch& b) { return !b.closed(); }));
}

Divide validate(std::vector<Branch> branches) {
  if (branches.empty()) throw Error(ErrorCode::EmptyDivide, "divide has no branches");
  for (Branch& br : branches)
    for (Point2& p : br.vertices) {
      p.x.canonicalize();
      p.y.canonicalize();
    }
  check_branch_shape(branches);
  Divide d;
  d.double_points_ = checked_double_points(branches);
  d.tangencies_ = scan_tangencies(branches, false);
  d.branches_ = std::move(branches);
  return d;
}

std::vector<DoublePoint> compute_double_points(const Divide& divide) {
  return checked_double_points(divide.branches());
}

std::vector<Tangency> compute_tangencies(const Divide& divide) {
  return scan_tangencies(divide.branches(), true);
}

GenericityReport genericity_check(const Divide& divide) {
  GenericityReport report;
  append_common_violations(divide.branches(), divide.double_points(), divide.tangencies(), report);
  return report;
}

GenericityReport diagnose(const std::vector<Branch>& branches) {
  if (branches.empty()) throw Error(ErrorCode::EmptyDivide, "divide has no branches");
  check_branch_shape(branches);
  GenericityReport report;
  IntersectionScan scan = scan_intersections(branches);
  for (const Contact& c : scan.overlaps)
    report.violations.push_back({ViolationCode::NonTransverse,
                                 seg_label(c.branch_a, c.segment_a) + " overlaps " +
                                     seg_label(c.branch_b, c.segment_b),
                                 {seg_label(c.branch_a, c.segment_a), seg_label(c.branch_b, c.segment_b)}});
  for (const Contact& c : scan.touches)
    report.violations.push_back({ViolationCode::NonTransverse,
                                 seg_label(c.branch_a, c.segment_a) + " touches " +
                                     seg_label(c.branch_b, c.segment_b) + " at a vertex",
                                 {seg_label(c.branch_a, c.segment_a), seg_label(c.branch_b, c.segment_b)}});
  for (const auto& group : concurrent_groups(scan.proper)) {
    Violation v{ViolationCode::TriplePoint,
                "three or more segments meet at " + to_string(scan.proper[group[0]].position), {}};
    for (std::size_t k : group)
      for (const SegmentRef& r : scan.proper[k].incidences) v.elements.push_back(seg_label(r.branch, r.segment));
    std::sort(v.elements.begin(), v.elements.end());
    v.elements.erase(std::unique(v.elements.begin(), v.elements.end()), v.elements.end());
    report.violations.push_back(std::move(v));
  }
  append_common_violations(branches, scan.proper, scan_tangencies(branches, false), report);
  return report;
}

bool endpoint_ray_clear(const std::vector<Branch>& branches, std::size_t branch, bool last_end) {
  const Branch& own = branches[branch];
  const Point2& p = last_end ? own.vertices.back() : own.vertices.front();
  const Point2 ray_end{p.x, Rational(-2)};
  for (const Branch& br : branches)
    for (std::size_t s = 0; s < br.segment_count(); ++s)
      if (ray_blocked_by(p, ray_end, br.segment_start(s), br.segment_end(s))) return false;
  return true;
}

Divide perturb_to_generic(const Divide& divide, const Rational& epsilon, std::uint64_t seed) {
  if (genericity_check(divide).generic) return divide;
  return perturb_to_generic(divide.branches(), epsilon, seed);
}

Divide perturb_to_generic(const std::vector<Branch>& input, const Rational& epsilon,
                          std::uint64_t seed) {
  if (epsilon <= 0) throw Error(ErrorCode::InvalidParams, "epsilon must be positive");

  std::optional<Divide> valid;
  try {
    valid = validate(input);
  } catch (const Error& e) {
    if (!perturbable(e.code())) throw;
  }
  if (valid && genericity_check(*valid).generic) return *valid;

  constexpr long kSteps = 1000;
  std::mt19937_64 rng(seed);
  auto offset = [&]() {
    const long k = static_cast<long>(rng() % (2 * kSteps + 1)) - kSteps;
    return Rational(epsilon * Rational(k, kSteps));
  };

  std::string last_problem = "no attempt made";
  std::optional<Divide> ray_only;
  auto jitter = [&](const std::vector<Branch>& base,
                    const std::optional<Signature>& expected) -> std::optional<Divide> {
    for (int attempt = 0; attempt < kPerturbationAttempts; ++attempt) {
      std::vector<Branch> candidate = base;
      for (Branch& br : candidate)
        for (Point2& p : br.vertices) {
          Rational dx = offset(), dy = offset();
          p = Point2{p.x + dx, p.y + dy};
        }
      try {
        Divide d = validate(candidate);
        if (expected && signature_of(d.double_points()) != *expected) {
          last_problem = "jitter changed the double-point structure";
          continue;
        }
        GenericityReport report = genericity_check(d);
        if (report.generic) return d;
        if (!ray_only && report.count(ViolationCode::EndpointRayBlocked) == report.violations.size())
          ray_only = d;
        last_problem = report.violations.front().description;
      } catch (const Error& e) {
        last_problem = e.what();
      }
    }
    return std::nullopt;
  };

  std::optional<Signature> expected;
  if (valid) expected = signature_of(valid->double_points());
  if (auto d = jitter(input, expected)) return *d;
  // Jitter alone cannot clear a ray that is blocked for topological reasons.
  if (valid && genericity_check(*valid).count(ViolationCode::EndpointRayBlocked) == 0) valid.reset();
  if (!valid) valid = ray_only;
  if (valid) {
    try {
      Divide n = normalize_endpoints(*valid);
      if (genericity_check(n).generic) return n;
      if (auto d = jitter(n.branches(), signature_of(n.double_points()))) return *d;
    } catch (const Error& e) {
      last_problem = e.what();
    }
  }
  throw Error(ErrorCode::PerturbationFailed,
              "no generic divide after " + std::to_string(kPerturbationAttempts) +
                  " attempts; last violation: " + last_problem);
}

namespace {

constexpr double kPi = std::numbers::pi;

Point2 polar_point(double radius, double angle) {
  return {round_to_grid(radius * std::cos(angle), 16), round_to_grid(radius * std::sin(angle), 16)};
}

// Try to move one endpoint along an arc just inside the boundary until its ray is clear.
std::optional<std::vector<Branch>> reroute_endpoint(const std::vector<Branch>& branches,
                                                    std::size_t b, bool last_end,
                                                    std::size_t base_crossings) {
  const Branch& br = branches[b];
  const Point2& e = last_end ? br.vertices.back() : br.vertices.front();
  const double theta = std::atan2(to_double(e.y), to_double(e.x));
  // Shorter way round to the bottom first.
  double to_bottom = -kPi / 2 - theta;
  while (to_bottom > kPi) to_bottom -= 2 * kPi;
  while (to_bottom < -kPi) to_bottom += 2 * kPi;
  const double first_dir = to_bottom >= 0 ? 1.0 : -1.0;
  constexpr double kStep = kPi / 45;  // 4 degrees

  for (double dir : {first_dir, -first_dir}) {
    for (double radius : {0.972, 0.965, 0.955, 0.94, 0.92, 0.9}) {
      std::vector<Point2> arc{polar_point(radius, theta)};
      for (int k = 1; k * kStep < 2 * kPi; ++k) {
        const double phi = theta + dir * k * kStep;
        arc.push_back(polar_point(radius, phi));
        std::vector<Point2> extension = arc;
        extension.push_back(polar_point(0.99, phi));
        std::vector<Branch> candidate = branches;
        std::vector<Point2>& vs = candidate[b].vertices;
        if (last_end) {
          vs.pop_back();
          vs.insert(vs.end(), extension.begin(), extension.end());
        } else {
          vs.erase(vs.begin());
          std::reverse(extension.begin(), extension.end());
          vs.insert(vs.begin(), extension.begin(), extension.end());
        }
        try {
          Divide d = validate(candidate);
          if (d.double_points().size() != base_crossings) break;  // path ran into something
          if (endpoint_ray_clear(candidate, b, last_end)) return candidate;
        } catch (const Error&) {
          break;
        }
      }
    }
  }
  return std::nullopt;
}

}  // namespace

namespace {

std::optional<Divide> reroute_all(const Divide& divide) {
  std::vector<Branch> branches = divide.branches();
  const std::size_t crossings = divide.double_points().size();
  auto blocked = [&]() {
    std::vector<std::pair<std::size_t, bool>> out;
    for (std::size_t b = 0; b < branches.size(); ++b) {
      if (branches[b].closed()) continue;
      for (bool last : {false, true})
        if (!endpoint_ray_clear(branches, b, last)) out.emplace_back(b, last);
    }
    return out;
  };
  auto pending = blocked();
  // Each reroute fixes one endpoint; bound the work by the endpoint count.
  const std::size_t budget = 2 * branches.size() + 2;
  for (std::size_t round = 0; round < budget && !pending.empty(); ++round) {
    bool progressed = false;
    for (auto [b, last] : pending) {
      auto next = reroute_endpoint(branches, b, last, crossings);
      if (!next) continue;
      std::vector<Branch> saved = branches;
      branches = std::move(*next);
      if (blocked().size() < pending.size()) {
        progressed = true;
        break;
      }
      branches = std::move(saved);
    }
    pending = blocked();
    if (!progressed) break;
  }
  if (!pending.empty()) return std::nullopt;
  return validate(std::move(branches));
}

std::optional<Divide> rotated(const Divide& divide, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  std::vector<Branch> branches = divide.branches();
  for (Branch& br : branches)
    for (Point2& p : br.vertices) {
      const double x = to_double(p.x), y = to_double(p.y);
      p = Point2{round_to_grid(c * x - s * y, 24), round_to_grid(s * x + c * y, 24)};
    }
  try {
    Divide d = validate(std::move(branches));
    if (signature_of(d.double_points()) != signature_of(divide.double_points())) return std::nullopt;
    return d;
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

Divide normalize_endpoints(const Divide& divide) {
  bool clear = true;
  for (std::size_t b = 0; b < divide.branches().size(); ++b)
    if (!divide.branches()[b].closed())
      for (bool last : {false, true}) clear = clear && endpoint_ray_clear(divide.branches(), b, last);
  if (clear) return divide;
  if (auto d = reroute_all(divide)) return *d;
  // Rotating the disk is an isotopy; some configurations only clear after turning.
  for (int k = 1; k < 24; ++k) {
    const double angle = (k % 2 == 1 ? 1 : -1) * ((k + 1) / 2) * kPi / 12;
    if (auto r = rotated(divide, angle))
      if (auto d = reroute_all(*r)) return *d;
  }
  throw Error(ErrorCode::NormalizationFailed,
              "could not clear every downward endpoint ray");
}

}  // namespace divlink
