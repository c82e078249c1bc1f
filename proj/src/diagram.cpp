#include "divlink/diagram.h"

#include "divlink/error.h"
#include "divlink/geometry.h"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

namespace divlink {

std::string crossing_role_name(CrossingRole role) {
  switch (role) {
    case CrossingRole::DoubleUpper: return "DoubleUpper";
    case CrossingRole::DoubleLower: return "DoubleLower";
    case CrossingRole::HalfTwist: return "HalfTwist";
    case CrossingRole::StringCurveUpper: return "StringCurveUpper";
    case CrossingRole::StringCurveLower: return "StringCurveLower";
  }
  return "Unknown";
}

std::string convention_name(const Convention& c) {
  return std::string(c.slope == Convention::Slope::LargerOver ? "larger-slope-over" : "smaller-slope-over") +
         "/" + (c.twist == Convention::Twist::FallingOver ? "falling-over" : "rising-over");
}

Convention default_convention() {
  return {Convention::Slope::SmallerOver, Convention::Twist::RisingOver};
}

std::size_t LinkDiagram::free_loop_count() const {
  std::vector<bool> touched(components.size(), false);
  for (const Crossing& c : crossings) {
    touched[c.over.component] = true;
    touched[c.under.component] = true;
  }
  return static_cast<std::size_t>(std::count(touched.begin(), touched.end(), false));
}

namespace {

// Thrown when the chosen string spacing makes construction pieces collide.
struct Collision {
  std::string what;
};

Copy other(Copy c) { return c == Copy::Upper ? Copy::Lower : Copy::Upper; }

/// Open polyline with one tag per segment.
struct Path {
  std::vector<Point2> points;
  std::vector<SegmentTag> tags;

  void start(Point2 p) {
    points.assign(1, std::move(p));
    tags.clear();
  }
  void to(Point2 p, const SegmentTag& tag) {
    points.push_back(std::move(p));
    tags.push_back(tag);
  }
  void extend(const Path& other) {
    // other.points.front() must equal points.back()
    for (std::size_t i = 0; i < other.tags.size(); ++i) to(other.points[i + 1], other.tags[i]);
  }
};

struct Geometry {
  Rational mirror_y;
  Rational half_window;  // vertical extent of the half-twist around the mirror line

  Point2 reflect(const Point2& p) const { return {p.x, 2 * mirror_y - p.y}; }

  Path reflect(const Path& path) const {
    Path out;
    for (const Point2& p : path.points) out.points.push_back(reflect(p));
    for (SegmentTag t : path.tags) {
      if (t.kind != SegmentTag::Kind::Twist && t.kind != SegmentTag::Kind::Boundary) t.copy = other(t.copy);
      out.tags.push_back(t);
    }
    return out;
  }
};

Path reversed(const Path& path) {
  Path out;
  out.points.assign(path.points.rbegin(), path.points.rend());
  out.tags.assign(path.tags.rbegin(), path.tags.rend());
  return out;
}

struct ArmEnd {
  Point2 point;  // truncation point, upper copy
  bool upper = false;
  Rational string_x;
};

struct TangencyFrame {
  Rational x0;
  TangencyKind kind;
  ArmEnd incoming;  // arm of the segment entering the tangency vertex
  ArmEnd outgoing;  // arm of the segment leaving it
};

class Builder {
 public:
  Builder(const Divide& divide, const Rational& epsilon, const Rational& gap)
      : divide_(divide), tangencies_(compute_tangencies(divide)), epsilon_(epsilon) {
    geo_.mirror_y = -1 - gap;
    geo_.half_window = gap / 4;
    for (std::size_t i = 0; i < tangencies_.size(); ++i)
      tangency_at_[{tangencies_[i].branch, tangencies_[i].vertex}] = i;
    for (std::size_t i = 0; i < tangencies_.size(); ++i) frames_.push_back(frame(i));
  }

  const Geometry& geometry() const { return geo_; }

  std::vector<ComponentPath> components() {
    std::vector<ComponentPath> out;
    for (std::size_t b = 0; b < divide_.branches().size(); ++b) {
      const Branch& br = divide_.branches()[b];
      if (!br.closed()) {
        Path w = walk(b);
        Path comp = w;
        const Point2 end = w.points.back();
        comp.to(geo_.reflect(end), boundary_tag(b));
        comp.extend(reversed(geo_.reflect(w)));
        comp.to(w.points.front(), boundary_tag(b));
        out.push_back(close(comp, b));
      } else {
        Path w = walk(b);
        Path mirrored = geo_.reflect(w);
        out.push_back(close(w, b));
        out.push_back(close(mirrored, b));
      }
    }
    return out;
  }

 private:
  static SegmentTag boundary_tag(std::size_t b) {
    SegmentTag t;
    t.kind = SegmentTag::Kind::Boundary;
    t.branch = b;
    return t;
  }

  static ComponentPath close(Path path, std::size_t branch) {
    // The walk returns to its start; drop the duplicated closing point.
    if (path.points.size() < 2 || path.points.back() != path.points.front())
      throw Error(ErrorCode::Internal, "component walk does not close");
    path.points.pop_back();
    ComponentPath c;
    c.branch = branch;
    c.points = std::move(path.points);
    c.tags = std::move(path.tags);
    return c;
  }

  TangencyFrame frame(std::size_t index) const {
    const Tangency& t = tangencies_[index];
    const Branch& br = divide_.branches()[t.branch];
    const std::size_t n = br.vertices.size();
    const Point2& p = br.vertices[t.vertex];
    const Point2& prev = br.vertices[(t.vertex + n - 1) % n];
    const Point2& next = br.vertices[(t.vertex + 1) % n];
    TangencyFrame f;
    f.x0 = p.x;
    f.kind = t.kind;
    const Rational cut = t.kind == TangencyKind::XMin ? Rational(p.x + epsilon_) : Rational(p.x - epsilon_);
    const Rational far = t.kind == TangencyKind::XMin ? Rational(p.x - epsilon_) : Rational(p.x + epsilon_);
    f.incoming.point = point_at_x(prev, p, cut);
    f.outgoing.point = point_at_x(p, next, cut);
    if (f.incoming.point.y == f.outgoing.point.y) throw Collision{"tangency arms meet at the cut"};
    f.incoming.upper = f.incoming.point.y > f.outgoing.point.y;
    f.outgoing.upper = !f.incoming.upper;
    f.incoming.string_x = f.incoming.upper ? far : cut;
    f.outgoing.string_x = f.outgoing.upper ? far : cut;
    return f;
  }

  // From the arm's cut point down to the top of the half-twist, upper copy.
  Path arm_path(std::size_t index, const ArmEnd& arm) const {
    const TangencyFrame& f = frames_[index];
    Path path;
    path.start(arm.point);
    SegmentTag tag;
    tag.tangency = index;
    tag.branch = tangencies_[index].branch;
    tag.copy = Copy::Upper;
    if (arm.upper) {
      tag.kind = SegmentTag::Kind::Connector;
      path.to({arm.string_x, arm.point.y}, tag);
    }
    tag.kind = SegmentTag::Kind::String;
    tag.side = arm.string_x < f.x0 ? StringSide::Left : StringSide::Right;
    path.to({arm.string_x, geo_.mirror_y + geo_.half_window}, tag);
    return path;
  }

  // Strings and half-twist joining arm `from` in copy `copy` to arm `to` in the other copy.
  Path transition(std::size_t index, const ArmEnd& from, const ArmEnd& to, Copy copy) const {
    Path down = arm_path(index, from);
    Path up = reversed(geo_.reflect(arm_path(index, to)));
    if (copy == Copy::Lower) {
      down = geo_.reflect(down);
      up = geo_.reflect(up);
    }
    SegmentTag twist;
    twist.kind = SegmentTag::Kind::Twist;
    twist.tangency = index;
    twist.branch = tangencies_[index].branch;
    Path out = down;
    out.to(up.points.front(), twist);
    out.extend(up);
    return out;
  }

  Path walk(std::size_t b) const {
    const Branch& br = divide_.branches()[b];
    const std::size_t n = br.vertices.size();
    std::vector<std::size_t> tvs;  // tangency vertex indices in order
    for (std::size_t v = 0; v < n; ++v)
      if (tangency_at_.count({b, v})) tvs.push_back(v);

    auto divide_tag = [&](std::size_t seg, Copy copy) {
      SegmentTag t;
      t.kind = SegmentTag::Kind::Divide;
      t.branch = b;
      t.segment = seg;
      t.copy = copy;
      return t;
    };
    // Vertices strictly between tangency vertices a and c (indices modulo n), then the cut at c.
    auto append_piece = [&](Path& path, std::size_t a, std::size_t c, bool c_is_tangency, Copy copy) {
      auto place = [&](const Point2& p) { return copy == Copy::Upper ? p : geo_.reflect(p); };
      std::size_t seg = a % n;
      for (std::size_t v = a + 1; v < c; ++v) {
        path.to(place(br.vertices[v % n]), divide_tag(seg, copy));
        seg = v % n;
      }
      if (c_is_tangency) {
        const TangencyFrame& f = frames_[tangency_at_.at({b, c % n})];
        path.to(place(f.incoming.point), divide_tag(seg, copy));
      } else {
        path.to(place(br.vertices[c % n]), divide_tag(seg, copy));
      }
    };

    Path path;
    Copy copy = Copy::Upper;
    if (!br.closed()) {
      path.start(br.vertices.front());
      std::size_t a = 0;
      for (std::size_t tv : tvs) {
        append_piece(path, a, tv, true, copy);
        const std::size_t index = tangency_at_.at({b, tv});
        path.extend(transition(index, frames_[index].incoming, frames_[index].outgoing, copy));
        copy = other(copy);
        a = tv;
      }
      append_piece(path, a, n - 1, false, copy);
      return path;
    }
    if (tvs.size() < 2 || tvs.size() % 2 != 0)
      throw Error(ErrorCode::Internal, "closed branch with an odd number of tangencies");
    const std::size_t first = tangency_at_.at({b, tvs.front()});
    path.start(frames_[first].outgoing.point);
    for (std::size_t k = 0; k < tvs.size(); ++k) {
      const std::size_t a = tvs[k];
      const std::size_t c = k + 1 < tvs.size() ? tvs[k + 1] : tvs.front() + n;
      append_piece(path, a, c, true, copy);
      const std::size_t index = tangency_at_.at({b, c % n});
      path.extend(transition(index, frames_[index].incoming, frames_[index].outgoing, copy));
      copy = other(copy);
    }
    return path;
  }

  const Divide& divide_;
  std::vector<Tangency> tangencies_;
  Rational epsilon_;
  Geometry geo_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> tangency_at_;
  std::vector<TangencyFrame> frames_;
};

Point2 segment_direction(const ComponentPath& c, std::size_t seg) {
  return c.points[(seg + 1) % c.points.size()] - c.points[seg];
}

// Reverses a component path in place and remaps passages that lie on it.
void reverse_component(LinkDiagram& d, std::size_t comp) {
  ComponentPath& c = d.components[comp];
  const std::size_t n = c.points.size();
  std::vector<Point2> pts(n);
  std::vector<SegmentTag> tags(n);
  for (std::size_t j = 0; j < n; ++j) {
    pts[j] = c.points[(n - j) % n];
    tags[j] = c.tags[n - 1 - j];
  }
  c.points = std::move(pts);
  c.tags = std::move(tags);
  for (Crossing& x : d.crossings)
    for (Passage* p : {&x.over, &x.under})
      if (p->component == comp) {
        p->segment = n - 1 - p->segment;
        p->parameter = 1 - p->parameter;
      }
}

// Upper-copy divide segments point toward +x; lower-copy ones toward -x.
bool intrinsically_oriented(const ComponentPath& c) {
  for (std::size_t s = 0; s < c.tags.size(); ++s) {
    if (c.tags[s].kind != SegmentTag::Kind::Divide) continue;
    const int dx = sgn(segment_direction(c, s).x);
    return c.tags[s].copy == Copy::Upper ? dx > 0 : dx < 0;
  }
  return true;
}

struct PassageRef {
  std::size_t crossing;  // index into crossings
  bool over;
};

// Labels edges along each component and derives crossing signs.
void label_and_sign(LinkDiagram& d) {
  const std::size_t nc = d.components.size();
  std::vector<std::vector<std::pair<const Passage*, PassageRef>>> along(nc);
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    along[d.crossings[i].over.component].push_back({&d.crossings[i].over, {i, true}});
    along[d.crossings[i].under.component].push_back({&d.crossings[i].under, {i, false}});
  }
  d.edges.clear();
  std::size_t next_label = 1;
  for (std::size_t c = 0; c < nc; ++c) {
    auto& seq = along[c];
    std::sort(seq.begin(), seq.end(), [](const auto& l, const auto& r) {
      if (l.first->segment != r.first->segment) return l.first->segment < r.first->segment;
      return l.first->parameter < r.first->parameter;
    });
    if (seq.empty()) continue;
    // Basepoint: lowest crossing id, under-passage first.
    std::size_t base = 0;
    for (std::size_t k = 1; k < seq.size(); ++k) {
      const auto& cur = seq[k].second;
      const auto& best = seq[base].second;
      if (cur.crossing < best.crossing || (cur.crossing == best.crossing && !cur.over && best.over)) base = k;
    }
    std::rotate(seq.begin(), seq.begin() + static_cast<long>(base), seq.end());
    const std::size_t k = seq.size();
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t out_label = next_label + i;
      const std::size_t in_label = next_label + (i + k - 1) % k;
      Crossing& x = d.crossings[seq[i].second.crossing];
      if (seq[i].second.over) {
        x.over_in = in_label;
        x.over_out = out_label;
      } else {
        x.under_in = in_label;
        x.under_out = out_label;
      }
      d.edges.push_back({out_label, c, seq[i].second.crossing + 1, seq[(i + 1) % k].second.crossing + 1});
    }
    next_label += k;
  }
  for (Crossing& x : d.crossings) {
    const Point2 o = segment_direction(d.components[x.over.component], x.over.segment);
    const Point2 u = segment_direction(d.components[x.under.component], x.under.segment);
    x.sign = sgn(cross(o, u)) > 0 ? 1 : -1;
  }
}

struct SegmentBox {
  std::size_t component, segment;
  Rational xmin, xmax;
};

Rational slope(const Point2& dir) { return dir.y / dir.x; }

// Decides role and which passage is over for a crossing between tagged segments.
// Returns true if `a` is over.
bool classify(const SegmentTag& a, const Point2& da, const SegmentTag& b, const Point2& db,
              const Convention& conv, CrossingRole& role) {
  using K = SegmentTag::Kind;
  if (a.kind == K::Divide && b.kind == K::Divide) {
    if (a.copy != b.copy) throw Collision{"divide copies meet"};
    role = a.copy == Copy::Upper ? CrossingRole::DoubleUpper : CrossingRole::DoubleLower;
    const bool a_larger = slope(da) > slope(db);
    return conv.slope == Convention::Slope::LargerOver ? a_larger : !a_larger;
  }
  if (a.kind == K::String && b.kind == K::Divide) {
    if (a.copy != b.copy) throw Collision{"string meets the wrong copy"};
    role = a.copy == Copy::Upper ? CrossingRole::StringCurveUpper : CrossingRole::StringCurveLower;
    const bool right = a.side == StringSide::Right;
    // Upper half: the string fed by the upper arm passes under, the other over.
    // Lower half: the reverse. Each strand keeps one level through the twist.
    return a.copy == Copy::Upper ? right : !right;
  }
  if (a.kind == K::Divide && b.kind == K::String) return !classify(b, db, a, da, conv, role);
  if (a.kind == K::Twist && b.kind == K::Twist) {
    if (a.tangency != b.tangency) throw Collision{"half-twists of different tangencies meet"};
    role = CrossingRole::HalfTwist;
    const bool a_falling = slope(da) < 0;
    return conv.twist == Convention::Twist::FallingOver ? a_falling : !a_falling;
  }
  throw Collision{"unexpected crossing between construction pieces"};
}

LinkDiagram trace(const Divide& divide, const Rational& epsilon, const BuildOptions& options) {
  Builder builder(divide, epsilon, options.mirror_gap);
  LinkDiagram d;
  d.components = builder.components();
  d.mirror_y = builder.geometry().mirror_y;
  d.epsilon = epsilon;
  d.convention = options.convention;
  for (std::size_t c = 0; c < d.components.size(); ++c)
    if (!intrinsically_oriented(d.components[c])) reverse_component(d, c);

  std::vector<SegmentBox> boxes;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const ComponentPath& path = d.components[c];
    for (std::size_t s = 0; s < path.points.size(); ++s) {
      const Point2& a = path.points[s];
      const Point2& b = path.points[(s + 1) % path.points.size()];
      boxes.push_back({c, s, std::min(a.x, b.x), std::max(a.x, b.x)});
    }
  }
  std::sort(boxes.begin(), boxes.end(), [](const SegmentBox& l, const SegmentBox& r) {
    if (l.xmin != r.xmin) return l.xmin < r.xmin;
    return std::tie(l.component, l.segment) < std::tie(r.component, r.segment);
  });
  auto consecutive = [&](const SegmentBox& p, const SegmentBox& q) {
    if (p.component != q.component) return false;
    const std::size_t n = d.components[p.component].points.size();
    return (p.segment + 1) % n == q.segment || (q.segment + 1) % n == p.segment;
  };

  struct Raw {
    Point2 position;
    CrossingRole role;
    Passage over, under;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < boxes.size(); ++i) {
    for (std::size_t j = i + 1; j < boxes.size() && boxes[j].xmin <= boxes[i].xmax; ++j) {
      const SegmentBox& p = boxes[i];
      const SegmentBox& q = boxes[j];
      const ComponentPath& cp = d.components[p.component];
      const ComponentPath& cq = d.components[q.component];
      const Point2& p0 = cp.points[p.segment];
      const Point2& p1 = cp.points[(p.segment + 1) % cp.points.size()];
      const Point2& q0 = cq.points[q.segment];
      const Point2& q1 = cq.points[(q.segment + 1) % cq.points.size()];
      auto hit = intersect_segments(p0, p1, q0, q1);
      using Kind = SegmentIntersection::Kind;
      if (hit.kind == Kind::None) continue;
      if (consecutive(p, q) && hit.kind == Kind::Touch) continue;
      if (hit.kind != Kind::Proper) throw Collision{"construction pieces touch"};
      CrossingRole role;
      const bool p_over = classify(cp.tags[p.segment], p1 - p0, cq.tags[q.segment], q1 - q0,
                                   options.convention, role);
      Passage pp{p.component, p.segment, hit.s};
      Passage pq{q.component, q.segment, hit.t};
      raw.push_back({hit.point, role, p_over ? pp : pq, p_over ? pq : pp});
    }
  }
  std::sort(raw.begin(), raw.end(), [](const Raw& l, const Raw& r) { return l.position < r.position; });
  for (std::size_t i = 0; i + 1 < raw.size(); ++i)
    if (raw[i].position == raw[i + 1].position) throw Collision{"two crossings share a position"};

  // Sanity: both strings of a tangency pierce the same number of intervals in each half.
  std::map<std::tuple<std::size_t, int, int>, std::size_t> pierced;
  for (const Raw& r : raw) {
    if (r.role != CrossingRole::StringCurveUpper && r.role != CrossingRole::StringCurveLower) continue;
    const Passage& sp =
        d.components[r.over.component].tags[r.over.segment].kind == SegmentTag::Kind::String ? r.over : r.under;
    const SegmentTag& tag = d.components[sp.component].tags[sp.segment];
    ++pierced[{tag.tangency, static_cast<int>(tag.copy), static_cast<int>(tag.side)}];
  }
  for (std::size_t t = 0; t < divide.tangencies().size(); ++t) {
    std::size_t counts[2][2];
    for (int c = 0; c < 2; ++c)
      for (int s = 0; s < 2; ++s) {
        auto it = pierced.find({t, c, s});
        counts[c][s] = it == pierced.end() ? 0 : it->second;
      }
    if (counts[0][0] != counts[0][1] || counts[1][0] != counts[1][1] || counts[0][0] != counts[1][0])
      throw Collision{"strings of one tangency pierce different intervals"};
  }

  d.crossings.clear();
  for (std::size_t i = 0; i < raw.size(); ++i) {
    Crossing x;
    x.id = i + 1;
    x.position = raw[i].position;
    x.role = raw[i].role;
    x.over = raw[i].over;
    x.under = raw[i].under;
    d.crossings.push_back(std::move(x));
  }
  label_and_sign(d);
  return d;
}

Rational default_epsilon(const Divide& divide) {
  std::optional<Rational> best;
  for (const Tangency& t : divide.tangencies()) {
    auto consider = [&](const Rational& x) {
      Rational gap = abs(x - t.position.x);
      if (gap > 0 && (!best || gap < *best)) best = gap;
    };
    for (const Branch& br : divide.branches())
      for (const Point2& v : br.vertices) consider(v.x);
    for (const DoublePoint& dp : divide.double_points()) consider(dp.position.x);
  }
  if (!best) return Rational(1, 64);
  return *best / 4;
}

constexpr int kEpsilonHalvings = 24;

}  // namespace

LinkDiagram build_diagram(const Divide& divide, const BuildOptions& options) {
  GenericityReport report = genericity_check(divide);
  if (!report.generic) {
    std::string msg = "divide is not generic:";
    for (const Violation& v : report.violations) msg += " [" + violation_code_name(v.code) + "] " + v.description + ";";
    throw Error(ErrorCode::NotGeneric, msg);
  }
  if (options.mirror_gap <= 0) throw Error(ErrorCode::InvalidParams, "mirror gap must be positive");
  Rational epsilon = options.epsilon ? *options.epsilon : default_epsilon(divide);
  if (epsilon <= 0) throw Error(ErrorCode::InvalidParams, "epsilon must be positive");
  std::string last;
  for (int attempt = 0; attempt <= kEpsilonHalvings; ++attempt) {
    try {
      return trace(divide, epsilon, options);
    } catch (const Collision& c) {
      last = c.what;
      epsilon /= 2;
    }
  }
  throw Error(ErrorCode::EpsilonCollision, "string spacing collides after " +
                                               std::to_string(kEpsilonHalvings) + " halvings: " + last);
}

LinkDiagram orient_and_sign(const LinkDiagram& diagram, const std::vector<bool>& branch_orientations) {
  LinkDiagram d = diagram;
  for (std::size_t c = 0; c < d.components.size(); ++c) {
    const std::size_t b = d.components[c].branch;
    if (b < branch_orientations.size() && branch_orientations[b]) reverse_component(d, c);
  }
  for (std::size_t c = 0; c < d.components.size(); ++c)
    if (!intrinsically_oriented(d.components[c])) reverse_component(d, c);
  label_and_sign(d);
  return d;
}

bool involution_check(const LinkDiagram& d) {
  const std::size_t n = d.crossings.size();
  auto mirror = [&](const Point2& p) { return Point2{p.x, 2 * d.mirror_y - p.y}; };
  auto mirror_role = [](CrossingRole r) {
    switch (r) {
      case CrossingRole::DoubleUpper: return CrossingRole::DoubleLower;
      case CrossingRole::DoubleLower: return CrossingRole::DoubleUpper;
      case CrossingRole::StringCurveUpper: return CrossingRole::StringCurveLower;
      case CrossingRole::StringCurveLower: return CrossingRole::StringCurveUpper;
      case CrossingRole::HalfTwist: return CrossingRole::HalfTwist;
    }
    return r;
  };
  // Crossing map by position.
  std::map<Point2, std::size_t> by_position;
  for (std::size_t i = 0; i < n; ++i) by_position[d.crossings[i].position] = i;
  std::vector<std::size_t> phi(n);
  for (std::size_t i = 0; i < n; ++i) {
    auto it = by_position.find(mirror(d.crossings[i].position));
    if (it == by_position.end()) return false;
    phi[i] = it->second;
    if (d.crossings[phi[i]].role != mirror_role(d.crossings[i].role)) return false;
  }
  // The over strand at a crossing must reflect onto the under strand at its image.
  auto segment_of = [&](const Passage& p) {
    const auto& pts = d.components[p.component].points;
    return std::make_pair(pts[p.segment], pts[(p.segment + 1) % pts.size()]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const auto [a, b] = segment_of(d.crossings[i].over);
    const auto [c, e] = segment_of(d.crossings[phi[i]].under);
    if (!(mirror(a) == e && mirror(b) == c)) return false;
  }
  // Passages (crossing, over?) map to (phi(crossing), !over); edges map with reversed direction.
  std::map<std::pair<std::size_t, bool>, std::pair<std::size_t, bool>> next_passage;
  for (std::size_t i = 0; i < n; ++i) {
    const Crossing& x = d.crossings[i];
    for (bool over : {true, false}) {
      const std::size_t out = over ? x.over_out : x.under_out;
      for (std::size_t j = 0; j < n; ++j) {
        if (d.crossings[j].over_in == out) next_passage[{i, over}] = {j, true};
        if (d.crossings[j].under_in == out) next_passage[{i, over}] = {j, false};
      }
    }
  }
  for (const auto& [from, to] : next_passage) {
    // Edge from -> to must map to an edge sigma(to) -> sigma(from).
    const std::pair<std::size_t, bool> sfrom{phi[from.first], !from.second};
    const std::pair<std::size_t, bool> sto{phi[to.first], !to.second};
    auto it = next_passage.find(sto);
    if (it == next_passage.end() || it->second != sfrom) return false;
  }
  // Geometric check on the component curves: reflected curves traced backwards.
  std::vector<bool> matched(d.components.size(), false);
  for (const ComponentPath& c : d.components) {
    std::vector<Point2> image;
    for (auto it = c.points.rbegin(); it != c.points.rend(); ++it) image.push_back(mirror(*it));
    bool found = false;
    for (std::size_t k = 0; k < d.components.size() && !found; ++k) {
      const auto& target = d.components[k].points;
      if (target.size() != image.size()) continue;
      auto start = std::find(target.begin(), target.end(), image.front());
      if (start == target.end()) continue;
      const std::size_t off = static_cast<std::size_t>(start - target.begin());
      bool same = true;
      for (std::size_t i = 0; i < image.size() && same; ++i) same = target[(off + i) % target.size()] == image[i];
      if (same) {
        found = true;
        matched[k] = true;
      }
    }
    if (!found) return false;
  }
  return std::all_of(matched.begin(), matched.end(), [](bool m) { return m; });
}

std::string PDCode::to_string() const {
  std::string out = "PD[";
  if (crossings.empty()) {
    out += components <= 1 ? "Unknot" : "Unlink[" + std::to_string(components) + "]";
    return out + "]";
  }
  bool first = true;
  for (const PDCrossing& x : crossings) {
    if (!first) out += ", ";
    first = false;
    out += "X[" + std::to_string(x.labels[0]) + "," + std::to_string(x.labels[1]) + "," +
           std::to_string(x.labels[2]) + "," + std::to_string(x.labels[3]) + "]";
  }
  for (std::size_t i = 0; i < free_loops; ++i) out += ", Loop[]";
  return out + "]";
}

PDCode pd_code(const LinkDiagram& d) {
  PDCode pd;
  pd.components = d.component_count();
  pd.free_loops = d.free_loop_count();
  for (const Crossing& x : d.crossings) {
    PDCrossing c;
    c.sign = x.sign;
    // Counterclockwise from the incoming under-edge: the over end on the right
    // of the under direction comes second.
    c.labels = {x.under_in, x.sign > 0 ? x.over_out : x.over_in, x.under_out,
                x.sign > 0 ? x.over_in : x.over_out};
    pd.crossings.push_back(c);
  }
  return pd;
}

std::size_t GaussCode::crossing_count() const {
  std::size_t n = 0;
  for (const auto& c : components) n += c.size();
  return n / 2;
}

std::string GaussCode::to_string() const {
  std::string out;
  for (std::size_t c = 0; c < components.size(); ++c) {
    if (c > 0) out += " / ";
    if (components[c].empty()) {
      out += "()";
      continue;
    }
    for (std::size_t i = 0; i < components[c].size(); ++i) {
      const GaussPassage& p = components[c][i];
      if (i > 0) out += " ";
      out += (p.over ? "O" : "U") + std::to_string(p.crossing) + (p.sign > 0 ? "+" : "-");
    }
  }
  return out;
}

GaussCode gauss_code(const LinkDiagram& d) {
  GaussCode g;
  g.components.resize(d.component_count());
  // Edges are labelled consecutively along each component from its basepoint.
  std::map<std::size_t, std::pair<std::size_t, bool>> passage_after_edge;
  for (std::size_t i = 0; i < d.crossings.size(); ++i) {
    passage_after_edge[d.crossings[i].over_in] = {i, true};
    passage_after_edge[d.crossings[i].under_in] = {i, false};
  }
  // Passage i of a component has out-edge label L+i; its successor enters through that label.
  std::map<std::size_t, std::vector<std::size_t>> labels_by_component;
  for (const Edge& e : d.edges) labels_by_component[e.component].push_back(e.label);
  for (auto& [comp, labels] : labels_by_component) {
    std::sort(labels.begin(), labels.end());
    // The basepoint passage is entered through the last label of the component.
    std::vector<std::size_t> order;
    order.push_back(labels.back());
    for (std::size_t k = 0; k + 1 < labels.size(); ++k) order.push_back(labels[k]);
    for (std::size_t in_label : order) {
      auto [idx, over] = passage_after_edge.at(in_label);
      g.components[comp].push_back({over, d.crossings[idx].id, d.crossings[idx].sign});
    }
  }
  return g;
}

bool codes_consistent(const PDCode& pd, const GaussCode& gauss) {
  if (pd.components != gauss.components.size()) return false;
  if (pd.crossings.size() != gauss.crossing_count()) return false;
  std::size_t empty = 0;
  for (const auto& c : gauss.components) empty += c.empty() ? 1 : 0;
  if (empty != pd.free_loops) return false;
  // Rebuild (under_in, under_out, over_in, over_out, sign) from the Gauss code.
  const std::size_t n = pd.crossings.size();
  std::vector<std::array<std::size_t, 4>> ends(n, {0, 0, 0, 0});
  std::vector<int> signs(n, 0), over_seen(n, 0), under_seen(n, 0);
  std::size_t next = 1;
  for (const auto& comp : gauss.components) {
    const std::size_t k = comp.size();
    for (std::size_t i = 0; i < k; ++i) {
      const GaussPassage& p = comp[i];
      if (p.crossing < 1 || p.crossing > n) return false;
      const std::size_t c = p.crossing - 1;
      const std::size_t in = next + (i + k - 1) % k, out = next + i;
      if (signs[c] != 0 && signs[c] != p.sign) return false;
      signs[c] = p.sign;
      if (p.over) {
        ++over_seen[c];
        ends[c][2] = in;
        ends[c][3] = out;
      } else {
        ++under_seen[c];
        ends[c][0] = in;
        ends[c][1] = out;
      }
    }
    next += k;
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (over_seen[c] != 1 || under_seen[c] != 1) return false;
    const PDCrossing& x = pd.crossings[c];
    if (x.sign != signs[c]) return false;
    const std::size_t b = signs[c] > 0 ? ends[c][3] : ends[c][2];
    const std::size_t dd = signs[c] > 0 ? ends[c][2] : ends[c][3];
    if (x.labels != std::array<std::size_t, 4>{ends[c][0], b, ends[c][1], dd}) return false;
  }
  // Every label appears exactly twice.
  std::map<std::size_t, int> uses;
  for (const PDCrossing& x : pd.crossings)
    for (std::size_t l : x.labels) ++uses[l];
  for (const auto& [label, count] : uses)
    if (count != 2) return false;
  return uses.size() == 2 * n;
}

std::size_t expected_crossing_count(const LinkDiagram& diagram, const Divide& divide) {
  std::size_t total = 2 * divide.double_points().size() + divide.tangencies().size();
  for (const Tangency& t : divide.tangencies()) {
    const Branch& own = divide.branches()[t.branch];
    const std::size_t n = own.vertices.size();
    const Point2& p = t.position;
    const Point2& prev = own.vertices[(t.vertex + n - 1) % n];
    const Point2& next = own.vertices[(t.vertex + 1) % n];
    const Rational cut = t.kind == TangencyKind::XMin ? Rational(p.x + diagram.epsilon) : Rational(p.x - diagram.epsilon);
    const Rational far = t.kind == TangencyKind::XMin ? Rational(p.x - diagram.epsilon) : Rational(p.x + diagram.epsilon);
    const Rational y_prev = point_at_x(prev, p, cut).y;
    const Rational y_next = point_at_x(p, next, cut).y;
    const Rational y_top_cut = std::min(y_prev, y_next);
    const Rational y_top_far = std::max(y_prev, y_next);
    for (const auto& [x, top] : {std::pair{cut, y_top_cut}, std::pair{far, y_top_far}}) {
      for (std::size_t b = 0; b < divide.branches().size(); ++b) {
        const Branch& br = divide.branches()[b];
        for (std::size_t s = 0; s < br.segment_count(); ++s) {
          if (b == t.branch && (s == t.vertex || (s + 1) % n == t.vertex)) continue;
          const Point2& a = br.segment_start(s);
          const Point2& c = br.segment_end(s);
          if (!(std::min(a.x, c.x) < x && x < std::max(a.x, c.x))) continue;
          if (point_at_x(a, c, x).y < top) total += 2;
        }
      }
    }
  }
  return total;
}

}  // namespace divlink
