#pragma once

#include "divlink/rational.h"

namespace divlink {

/// Sign of cross(b - a, c - a): +1 left turn, -1 right turn, 0 collinear.
int orientation(const Point2& a, const Point2& b, const Point2& c);

struct SegmentIntersection {
  enum class Kind {
    None,
    Proper,   // single point interior to both segments, transverse
    Touch,    // single point that is an endpoint of at least one segment
    Overlap,  // collinear with a shared sub-segment of positive length
  };
  Kind kind = Kind::None;
  Point2 point;  // valid for Proper and Touch
  Rational s;    // parameter along the first segment (Proper only)
  Rational t;    // parameter along the second segment (Proper only)
};

SegmentIntersection intersect_segments(const Point2& p0, const Point2& p1, const Point2& q0,
                                       const Point2& q1);

/// Axis-aligned bounding boxes intersect (closed boxes).
bool boxes_overlap(const Point2& p0, const Point2& p1, const Point2& q0, const Point2& q1);

/// Point on segment a-b at the given x, assuming a.x != b.x and x lies between them.
Point2 point_at_x(const Point2& a, const Point2& b, const Rational& x);

}  // namespace divlink
