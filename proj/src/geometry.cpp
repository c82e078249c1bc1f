#include "divlink/geometry.h"

#include <algorithm>

namespace divlink {

int orientation(const Point2& a, const Point2& b, const Point2& c) {
  Rational d = cross(b - a, c - a);
  return sgn(d);
}

namespace {

// p is collinear with a-b; is it within the closed segment?
bool on_closed_segment(const Point2& a, const Point2& b, const Point2& p) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

bool boxes_overlap(const Point2& p0, const Point2& p1, const Point2& q0, const Point2& q1) {
  if (std::max(p0.x, p1.x) < std::min(q0.x, q1.x)) return false;
  if (std::max(q0.x, q1.x) < std::min(p0.x, p1.x)) return false;
  if (std::max(p0.y, p1.y) < std::min(q0.y, q1.y)) return false;
  if (std::max(q0.y, q1.y) < std::min(p0.y, p1.y)) return false;
  return true;
}

SegmentIntersection intersect_segments(const Point2& p0, const Point2& p1, const Point2& q0,
                                       const Point2& q1) {
  using Kind = SegmentIntersection::Kind;
  SegmentIntersection out;
  if (!boxes_overlap(p0, p1, q0, q1)) return out;

  const int o1 = orientation(p0, p1, q0);
  const int o2 = orientation(p0, p1, q1);
  const int o3 = orientation(q0, q1, p0);
  const int o4 = orientation(q0, q1, p1);

  if (o1 == 0 && o2 == 0) {
    // Collinear: project onto the dominant axis.
    const bool use_x = p0.x != p1.x;
    auto key = [use_x](const Point2& p) -> const Rational& { return use_x ? p.x : p.y; };
    Rational plo = std::min(key(p0), key(p1)), phi = std::max(key(p0), key(p1));
    Rational qlo = std::min(key(q0), key(q1)), qhi = std::max(key(q0), key(q1));
    Rational lo = std::max(plo, qlo), hi = std::min(phi, qhi);
    if (lo > hi) return out;
    if (lo < hi) {
      out.kind = Kind::Overlap;
      return out;
    }
    out.kind = Kind::Touch;
    for (const Point2* c : {&p0, &p1, &q0, &q1})
      if (key(*c) == lo) out.point = *c;
    return out;
  }

  if (o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0) {
    if (o1 == o2 || o3 == o4) return out;
    const Point2 r = p1 - p0;
    const Point2 d = q1 - q0;
    const Rational denom = cross(r, d);
    out.kind = Kind::Proper;
    out.s = cross(q0 - p0, d) / denom;
    out.t = cross(q0 - p0, r) / denom;
    out.s.canonicalize();
    out.t.canonicalize();
    out.point = p0 + out.s * r;
    return out;
  }

  // Exactly one endpoint lies on the other segment's supporting line.
  if (o1 == 0 && on_closed_segment(p0, p1, q0)) {
    out.kind = Kind::Touch;
    out.point = q0;
  } else if (o2 == 0 && on_closed_segment(p0, p1, q1)) {
    out.kind = Kind::Touch;
    out.point = q1;
  } else if (o3 == 0 && on_closed_segment(q0, q1, p0)) {
    out.kind = Kind::Touch;
    out.point = p0;
  } else if (o4 == 0 && on_closed_segment(q0, q1, p1)) {
    out.kind = Kind::Touch;
    out.point = p1;
  }
  return out;
}

Point2 point_at_x(const Point2& a, const Point2& b, const Rational& x) {
  Rational s = (x - a.x) / (b.x - a.x);
  return {x, a.y + s * (b.y - a.y)};
}

}  // namespace divlink
