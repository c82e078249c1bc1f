#pragma once

#include "divlink/divide.h"

#include <optional>
#include <string>
#include <vector>

namespace divlink {

enum class Copy { Upper, Lower };

enum class StringSide { Left, Right };

/// Where a piece of a diagram curve came from in the construction.
struct SegmentTag {
  enum class Kind { Divide, Connector, String, Twist, Boundary };
  Kind kind = Kind::Divide;
  Copy copy = Copy::Upper;
  std::size_t branch = 0;
  std::size_t segment = 0;    // Divide: segment index in the branch
  std::size_t tangency = 0;   // Connector/String/Twist: index into Divide::tangencies()
  StringSide side = StringSide::Left;

  friend bool operator==(const SegmentTag&, const SegmentTag&) = default;
};

/// One closed, oriented curve of the diagram.
struct ComponentPath {
  std::size_t branch = 0;
  std::vector<Point2> points;      // closed polyline: segment i runs points[i] -> points[i+1 mod n]
  std::vector<SegmentTag> tags;    // one per segment
};

enum class CrossingRole { DoubleUpper, DoubleLower, HalfTwist, StringCurveUpper, StringCurveLower };

std::string crossing_role_name(CrossingRole role);

/// A point where one strand passes over another.
struct Passage {
  std::size_t component = 0;
  std::size_t segment = 0;
  Rational parameter;  // position along the segment, in (0, 1)
};

struct Crossing {
  std::size_t id = 0;  // 1-based, ordered by position
  Point2 position;
  CrossingRole role = CrossingRole::DoubleUpper;
  Passage over;
  Passage under;
  int sign = 0;  // +1 right-handed, -1 left-handed
  // Edge labels around the crossing (1-based, see LinkDiagram::edges).
  std::size_t over_in = 0, over_out = 0, under_in = 0, under_out = 0;
};

/// Arc of a component between consecutive crossing passages.
struct Edge {
  std::size_t label = 0;  // 1-based
  std::size_t component = 0;
  std::size_t from_crossing = 0;
  std::size_t to_crossing = 0;
};

/// Over/under choices that the construction leaves to a global convention.
struct Convention {
  enum class Slope { LargerOver, SmallerOver };
  enum class Twist { FallingOver, RisingOver };  // which diagonal of the half-twist is on top
  Slope slope = Slope::SmallerOver;
  Twist twist = Twist::FallingOver;

  friend bool operator==(const Convention&, const Convention&) = default;
};

std::string convention_name(const Convention& c);

/// The calibrated convention; see the calibration tests.
Convention default_convention();

struct BuildOptions {
  Convention convention = default_convention();
  Rational mirror_gap{1, 2};
  std::optional<Rational> epsilon;  // tangency string spacing; computed when absent
};

struct LinkDiagram {
  std::vector<ComponentPath> components;
  std::vector<Crossing> crossings;  // crossings[i].id == i + 1
  std::vector<Edge> edges;          // edges[i].label == i + 1
  Rational mirror_y;
  Rational epsilon;
  Convention convention;

  std::size_t component_count() const { return components.size(); }
  std::size_t crossing_count() const { return crossings.size(); }
  /// Components that pass through no crossing.
  std::size_t free_loop_count() const;
};

/// Runs the doubling construction on a generic divide: the divide and its
/// mirror image below y = -(1 + gap), crossings at double points by the slope
/// rule, vertical strings from each endpoint, and a pair of strings with a
/// half-twist at every vertical tangency.
LinkDiagram build_diagram(const Divide& divide, const BuildOptions& options = {});

/// Re-derives orientations and signs. Branch flags pick a traversal direction
/// per branch, but the orientation is intrinsic (upper copy moves toward +x),
/// so the result does not depend on them.
LinkDiagram orient_and_sign(const LinkDiagram& diagram,
                            const std::vector<bool>& branch_orientations = {});

/// Checks that reflecting across the mirror line and swapping every
/// over/under maps the diagram onto itself with all orientations reversed.
bool involution_check(const LinkDiagram& diagram);

/// PD tuples: counterclockwise from the incoming under-edge.
struct PDCrossing {
  std::array<std::size_t, 4> labels{};
  int sign = 0;

  friend bool operator==(const PDCrossing&, const PDCrossing&) = default;
};

struct PDCode {
  std::vector<PDCrossing> crossings;
  std::size_t components = 0;
  std::size_t free_loops = 0;

  std::string to_string() const;
};

PDCode pd_code(const LinkDiagram& diagram);

struct GaussPassage {
  bool over = false;
  std::size_t crossing = 0;
  int sign = 0;

  friend bool operator==(const GaussPassage&, const GaussPassage&) = default;
};

struct GaussCode {
  std::vector<std::vector<GaussPassage>> components;

  std::size_t crossing_count() const;
  std::string to_string() const;
};

GaussCode gauss_code(const LinkDiagram& diagram);

/// True if the PD and Gauss codes describe the same 4-valent graph.
bool codes_consistent(const PDCode& pd, const GaussCode& gauss);

/// The crossing count the construction predicts before tracing:
/// 2 * double points + tangencies + 2 * (string piercings in the upper half).
std::size_t expected_crossing_count(const LinkDiagram& diagram, const Divide& divide);

}  // namespace divlink
