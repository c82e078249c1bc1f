#include "divlink/generators.h"

#include "divlink/dsl.h"
#include "divlink/error.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <numeric>
#include <random>

namespace divlink {

namespace detail {
// Generated from the corpus directory at build time.
extern const std::vector<std::pair<std::string, std::string>> kCorpusFixtures;
}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;
constexpr unsigned kGrid = 20;  // coordinates live on a 2^-20 grid
const Rational kTorusScale{17, 25};
const Rational kPerturbation{1, 4096};

Point2 grid_point(double x, double y) { return {round_to_grid(x, kGrid), round_to_grid(y, kGrid)}; }

bool in_annulus(const Point2& p) {
  const Rational r2 = p.norm2();
  return r2 >= kAnnulusInnerSquared && r2 <= kAnnulusOuterSquared;
}

// Pushes an arc end at a corner of the Lissajous box out to radius 0.99.
Point2 extend_corner(const Point2& corner) {
  const double cx = to_double(corner.x), cy = to_double(corner.y);
  // Top corners go sideways, bottom corners mostly downward.
  const double dx = cy > 0 ? (cx > 0 ? 1.0 : -1.0) : (cx > 0 ? 0.125 : -0.125);
  const double dy = cy > 0 ? 0.0 : -1.0;
  const double b = cx * dx + cy * dy, a = dx * dx + dy * dy, c = cx * cx + cy * cy - 0.99 * 0.99;
  const double s = (-b + std::sqrt(b * b - a * c)) / a;
  Point2 end = grid_point(cx + s * dx, cy + s * dy);
  if (!in_annulus(end)) throw Error(ErrorCode::GenerationFailed, "corner extension missed the annulus");
  return end;
}

}  // namespace

Divide torus_divide(const TorusParams& params, std::uint64_t seed) {
  const int p = params.p, q = params.q;
  if (p < 1 || q < 1) throw Error(ErrorCode::InvalidParams, "p and q must be positive");
  if (p > 12 || q > 12) throw Error(ErrorCode::InvalidParams, "p and q are limited to 12");
  const int d = std::gcd(p, q), pp = p / d, qp = q / d;
  int n = params.samples;
  const int minimum = 8 * p * q;
  if (n == 0) n = minimum;
  if (n < minimum) throw Error(ErrorCode::InvalidParams, "samples must be at least 8*p*q = " + std::to_string(minimum));
  // x-extrema sit at theta = k pi / p'; keep them on the sample lattice.
  n = (n + pp - 1) / pp * pp;

  const double scale = to_double(kTorusScale);
  std::vector<Branch> branches;
  for (int j = 0; j <= d / 2; ++j) {
    const double phase = 2 * kPi * j / (d * pp);
    auto at = [&](double theta) {
      const double x = scale * std::cos(pp * theta);
      const double y = scale * std::cos(qp * theta + phase);
      return grid_point(x + y / 64, y);
    };
    // The curve is an arc when some parameter theta0 = pi m / p' is a corner.
    int arc_start = -1;
    for (int m = 0; m < 2 * pp && arc_start < 0; ++m)
      if ((qp * m * d + 2 * j) % (d * pp) == 0) arc_start = m;
    Branch br;
    if (arc_start >= 0) {
      br.kind = BranchKind::Open;
      const double theta0 = kPi * arc_start / pp;
      for (int i = 0; i <= n; ++i) br.vertices.push_back(at(theta0 + kPi * i / n));
      br.vertices.insert(br.vertices.begin(), extend_corner(br.vertices.front()));
      br.vertices.push_back(extend_corner(br.vertices.back()));
      for (Point2* e : {&br.vertices.front(), &br.vertices.back()})
        if (!in_annulus(*e)) throw Error(ErrorCode::GenerationFailed, "sheared endpoint left the annulus");
    } else {
      br.kind = BranchKind::Closed;
      for (int i = 0; i < 2 * n; ++i) br.vertices.push_back(at(kPi * i / n));
    }
    branches.push_back(std::move(br));
  }
  try {
    return perturb_to_generic(branches, kPerturbation, seed);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::PerturbationFailed) throw;
    throw Error(ErrorCode::GenerationFailed, std::string("torus divide: ") + e.what());
  }
}

const std::vector<std::string>& canned_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, text] : detail::kCorpusFixtures) out.push_back(name);
    return out;
  }();
  return names;
}

const std::string& canned_source(const std::string& name) {
  for (const auto& [n, text] : detail::kCorpusFixtures)
    if (n == name) return text;
  throw Error(ErrorCode::UnknownName, "no canned divide named '" + name + "'");
}

Divide canned(const std::string& name) {
  const DivideDocument doc = parse_document(canned_source(name));
  Divide d = validate(doc.branches);
  if (!genericity_check(d).generic) throw Error(ErrorCode::Internal, "canned divide '" + name + "' is not generic");
  return d;
}

Divide random_divide(int n_branches, int max_vertices, std::uint64_t seed) {
  if (n_branches < 1 || n_branches > 8) throw Error(ErrorCode::InvalidParams, "n_branches must be in 1..8");
  if (max_vertices < 2 || max_vertices > 40) throw Error(ErrorCode::InvalidParams, "max_vertices must be in 2..40");
  std::mt19937_64 rng(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  };
  auto grid = [](double v) { return round_to_grid(v, 10); };

  constexpr int kAttempts = 200;
  std::string last = "no attempt";
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    // Endpoint angles on the lower arc, at least 3 degrees apart.
    std::vector<double> angles;
    int guard = 0;
    while (static_cast<int>(angles.size()) < 2 * n_branches && guard++ < 10000) {
      const double a = uniform(200.0, 340.0);
      if (std::all_of(angles.begin(), angles.end(), [&](double b) { return std::abs(a - b) >= 3.0; }))
        angles.push_back(a);
    }
    if (static_cast<int>(angles.size()) < 2 * n_branches) continue;
    std::shuffle(angles.begin(), angles.end(), rng);

    std::vector<Branch> branches;
    for (int b = 0; b < n_branches; ++b) {
      Branch br;
      const int count = 2 + static_cast<int>(rng() % static_cast<unsigned>(max_vertices - 1));
      auto endpoint = [&](double degrees) {
        const double r = degrees * kPi / 180;
        return Point2{grid(0.99 * std::cos(r)), grid(0.99 * std::sin(r))};
      };
      auto leg = [&](const Point2& e) { return Point2{grid(0.97 * to_double(e.x)), grid(-0.25 + uniform(0, 0.05))}; };
      const Point2 e0 = endpoint(angles[2 * b]), e1 = endpoint(angles[2 * b + 1]);
      br.vertices.push_back(e0);
      if (count >= 4) br.vertices.push_back(leg(e0));
      const int inner = count >= 4 ? count - 4 : count - 2;
      for (int v = 0; v < inner; ++v) {
        Point2 inside;
        do {
          inside = {grid(uniform(-0.85, 0.85)), grid(uniform(-0.15, 0.7))};
        } while (inside.norm2() >= Rational(9, 10));
        br.vertices.push_back(inside);
      }
      if (count >= 4) br.vertices.push_back(leg(e1));
      br.vertices.push_back(e1);
      branches.push_back(std::move(br));
    }
    try {
      return perturb_to_generic(branches, Rational(1, 2048), rng());
    } catch (const Error& e) {
      last = e.what();
    }
  }
  throw Error(ErrorCode::GenerationFailed, "no generic random divide after " + std::to_string(kAttempts) +
                                               " attempts; last problem: " + last);
}

}  // namespace divlink
