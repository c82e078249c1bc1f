#pragma once

#include "divlink/rational.h"

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace divlink {

// The disk is topological: open-branch endpoints live in the annulus
// 0.98 <= r <= 1 and every other vertex strictly inside r = 0.98.
inline const Rational kAnnulusInnerSquared{2401, 2500};
inline const Rational kAnnulusOuterSquared{1};

enum class BranchKind { Open, Closed };

/// A piecewise-linear immersed interval or circle. Closed branches connect
/// their last vertex back to the first.
struct Branch {
  BranchKind kind = BranchKind::Open;
  std::vector<Point2> vertices;

  bool closed() const { return kind == BranchKind::Closed; }
  std::size_t segment_count() const {
    if (vertices.size() < 2) return 0;
    return closed() ? vertices.size() : vertices.size() - 1;
  }
  const Point2& segment_start(std::size_t i) const { return vertices[i]; }
  const Point2& segment_end(std::size_t i) const { return vertices[(i + 1) % vertices.size()]; }

  friend bool operator==(const Branch&, const Branch&) = default;
};

struct SegmentRef {
  std::size_t branch = 0;
  std::size_t segment = 0;
  Rational parameter;  // in (0, 1) along the segment

  friend bool operator==(const SegmentRef&, const SegmentRef&) = default;
};

struct DoublePoint {
  Point2 position;
  std::array<SegmentRef, 2> incidences;

  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

enum class TangencyKind { XMin, XMax };

/// A vertex where the x-coordinate reverses: the PL stand-in for a vertical tangent.
struct Tangency {
  std::size_t branch = 0;
  std::size_t vertex = 0;
  TangencyKind kind = TangencyKind::XMin;
  Point2 position;

  friend bool operator==(const Tangency&, const Tangency&) = default;
};

/// A validated divide. Only `validate` constructs one; the derived double
/// points and tangencies always agree with the branch geometry.
class Divide {
 public:
  const std::vector<Branch>& branches() const { return branches_; }
  const std::vector<DoublePoint>& double_points() const { return double_points_; }
  const std::vector<Tangency>& tangencies() const { return tangencies_; }

  std::size_t open_branch_count() const;

  friend bool operator==(const Divide& a, const Divide& b) { return a.branches_ == b.branches_; }

 private:
  friend Divide validate(std::vector<Branch> branches);

  std::vector<Branch> branches_;
  std::vector<DoublePoint> double_points_;
  std::vector<Tangency> tangencies_;
};

enum class ViolationCode {
  SharedX,
  TangencyAtDouble,
  TangencyAtBoundary,
  VerticalSegment,
  TriplePoint,
  EndpointRayBlocked,
  NonTransverse,
};

std::string violation_code_name(ViolationCode code);

struct Violation {
  ViolationCode code;
  std::string description;
  std::vector<std::string> elements;
};

struct GenericityReport {
  bool generic = true;
  std::vector<Violation> violations;

  std::size_t count(ViolationCode code) const;
};

/// Checks the immersion, boundary, and intersection conditions and derives
/// double points and tangencies. Exactly-vertical segments are accepted here
/// (they are a genericity violation, not an immersion failure).
Divide validate(std::vector<Branch> branches);

/// Recomputes the double points from the branch geometry, sorted by position.
std::vector<DoublePoint> compute_double_points(const Divide& divide);

/// All x-reversal vertices, sorted by x. Throws VerticalSegment if any
/// segment is exactly vertical.
std::vector<Tangency> compute_tangencies(const Divide& divide);

/// Never throws. `generic` is true iff no violations were found.
GenericityReport genericity_check(const Divide& divide);

/// Diagnoses raw branches that may fail validation by perturbable defects
/// (triple points, touching at vertices). Immersion and boundary failures
/// are still thrown.
GenericityReport diagnose(const std::vector<Branch>& branches);

/// True if the downward vertical ray from each open-branch endpoint meets
/// the divide only at that endpoint.
bool endpoint_ray_clear(const std::vector<Branch>& branches, std::size_t branch, bool last_end);

/// Seeded rational jitter (offsets <= epsilon per coordinate) until the
/// divide is generic. Returns the input unchanged if it already is.
Divide perturb_to_generic(const Divide& divide, const Rational& epsilon, std::uint64_t seed);
Divide perturb_to_generic(const std::vector<Branch>& branches, const Rational& epsilon,
                          std::uint64_t seed);

/// Reroutes endpoints whose downward ray is blocked along a path just inside
/// the boundary until the ray is clear.
Divide normalize_endpoints(const Divide& divide);

inline constexpr int kPerturbationAttempts = 64;

}  // namespace divlink
