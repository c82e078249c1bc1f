#include "divlink/render.h"

#include "divlink/error.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace divlink {

namespace {

const char* const kPalette[] = {"#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#b7950b"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
  return buf;
}

struct Frame {
  double min_x, max_y, scale, margin;
  double px(double x) const { return margin + (x - min_x) * scale; }
  double py(double y) const { return margin + (max_y - y) * scale; }
};

std::string header(double width, double height) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(width) << "\" height=\""
      << num(height) << "\" viewBox=\"0 0 " << num(width) << " " << num(height) << "\">\n"
      << "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" << num(width) << "\" height=\"" << num(height)
      << "\" fill=\"white\"/>\n";
  return out.str();
}

struct XY {
  double x, y;
};

}  // namespace

void check_render_config(const RenderConfig& config) {
  if (config.canvas_size <= 0) throw Error(ErrorCode::InvalidParams, "canvas size must be positive");
  if (config.stroke_width <= 0) throw Error(ErrorCode::InvalidParams, "stroke width must be positive");
  if (!(config.under_gap > config.stroke_width))
    throw Error(ErrorCode::InvalidParams, "under-gap must be wider than the stroke");
}

std::string render_divide_svg(const Divide& divide, const RenderConfig& config) {
  check_render_config(config);
  const double size = config.canvas_size;
  const double margin = 0.04 * size;
  const Frame f{-1.0, 1.0, (size - 2 * margin) / 2.0, margin};
  const double sw = config.stroke_width;

  std::ostringstream out;
  out << header(size, size);
  out << "<circle class=\"boundary\" cx=\"" << num(f.px(0)) << "\" cy=\"" << num(f.py(0)) << "\" r=\""
      << num(f.scale) << "\" fill=\"none\" stroke=\"#999999\" stroke-width=\"" << num(sw / 2) << "\"/>\n";
  for (std::size_t b = 0; b < divide.branches().size(); ++b) {
    const Branch& br = divide.branches()[b];
    out << "<path class=\"branch\" data-branch=\"" << b << "\" d=\"";
    for (std::size_t i = 0; i < br.vertices.size(); ++i) {
      const Point2& p = br.vertices[i];
      out << (i == 0 ? "M" : " L") << num(f.px(to_double(p.x))) << "," << num(f.py(to_double(p.y)));
    }
    if (br.closed()) out << " Z";
    out << "\" fill=\"none\" stroke=\"black\" stroke-width=\"" << num(sw) << "\" stroke-linejoin=\"round\"/>\n";
  }
  const double r = 2.5 * sw;
  for (const Branch& br : divide.branches()) {
    if (br.closed() || br.vertices.empty()) continue;
    for (const Point2* p : {&br.vertices.front(), &br.vertices.back()})
      out << "<circle class=\"endpoint\" cx=\"" << num(f.px(to_double(p->x))) << "\" cy=\"" << num(f.py(to_double(p->y)))
          << "\" r=\"" << num(1.5 * sw) << "\" fill=\"white\" stroke=\"black\" stroke-width=\"" << num(sw / 2) << "\"/>\n";
  }
  for (std::size_t i = 0; i < divide.double_points().size(); ++i) {
    const Point2& p = divide.double_points()[i].position;
    out << "<circle class=\"double-point\" cx=\"" << num(f.px(to_double(p.x))) << "\" cy=\"" << num(f.py(to_double(p.y)))
        << "\" r=\"" << num(r) << "\" fill=\"#c0392b\"/>\n";
    if (config.show_labels)
      out << "<text class=\"label\" x=\"" << num(f.px(to_double(p.x)) + r) << "\" y=\"" << num(f.py(to_double(p.y)) - r)
          << "\" font-size=\"" << num(4 * sw + 4) << "\">" << i + 1 << "</text>\n";
  }
  for (const Tangency& t : divide.tangencies()) {
    const double x = f.px(to_double(t.position.x)), y = f.py(to_double(t.position.y));
    out << "<rect class=\"tangency\" x=\"" << num(x - sw) << "\" y=\"" << num(y - 3 * r) << "\" width=\"" << num(2 * sw)
        << "\" height=\"" << num(6 * r) << "\" fill=\"#1f5fa8\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string render_diagram_svg(const LinkDiagram& diagram, const RenderConfig& config) {
  check_render_config(config);
  double min_x = -1, max_x = 1, min_y = 1, max_y = -1;
  for (const ComponentPath& c : diagram.components)
    for (const Point2& p : c.points) {
      min_x = std::min(min_x, to_double(p.x));
      max_x = std::max(max_x, to_double(p.x));
      min_y = std::min(min_y, to_double(p.y));
      max_y = std::max(max_y, to_double(p.y));
    }
  if (diagram.components.empty()) min_y = -1, max_y = 1;
  const double span = std::max(max_x - min_x, max_y - min_y);
  const double margin = 0.04 * config.canvas_size;
  const double scale = (config.canvas_size - 2 * margin) / span;
  const Frame f{min_x, max_y, scale, margin};
  const double width = 2 * margin + (max_x - min_x) * scale;
  const double height = 2 * margin + (max_y - min_y) * scale;
  const double sw = config.stroke_width;

  std::ostringstream out;
  out << header(width, height);
  if (config.show_mirror_line) {
    const double y = f.py(to_double(diagram.mirror_y));
    out << "<line class=\"mirror\" x1=\"0\" y1=\"" << num(y) << "\" x2=\"" << num(width) << "\" y2=\"" << num(y)
        << "\" stroke=\"#999999\" stroke-width=\"" << num(sw / 2) << "\" stroke-dasharray=\"6 4\"/>\n";
  }

  for (std::size_t ci = 0; ci < diagram.components.size(); ++ci) {
    const ComponentPath& comp = diagram.components[ci];
    const std::size_t n = comp.points.size();
    std::vector<XY> pts(n);
    for (std::size_t i = 0; i < n; ++i) pts[i] = {f.px(to_double(comp.points[i].x)), f.py(to_double(comp.points[i].y))};
    // Arclength (px) at each vertex; the closing segment ends at `total`.
    std::vector<double> at(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      const XY& a = pts[i];
      const XY& b = pts[(i + 1) % n];
      at[i + 1] = at[i] + std::hypot(b.x - a.x, b.y - a.y);
    }
    const double total = at[n];
    auto point_at = [&](double s) {
      s = std::fmod(s, total);
      if (s < 0) s += total;
      const std::size_t i = std::min<std::size_t>(
          n - 1, static_cast<std::size_t>(std::upper_bound(at.begin(), at.end(), s) - at.begin()) - 1);
      const double len = at[i + 1] - at[i];
      const double u = len > 0 ? (s - at[i]) / len : 0;
      const XY& a = pts[i];
      const XY& b = pts[(i + 1) % n];
      return XY{a.x + u * (b.x - a.x), a.y + u * (b.y - a.y)};
    };

    std::vector<double> cuts;
    for (const Crossing& x : diagram.crossings) {
      if (x.under.component != ci) continue;
      const double len = at[x.under.segment + 1] - at[x.under.segment];
      cuts.push_back(at[x.under.segment] + to_double(x.under.parameter) * len);
    }
    std::sort(cuts.begin(), cuts.end());
    const char* color = kPalette[ci % (sizeof kPalette / sizeof kPalette[0])];
    auto open_path = [&] {
      out << "<path class=\"strand\" data-component=\"" << ci << "\" fill=\"none\" stroke=\"" << color
          << "\" stroke-width=\"" << num(sw) << "\" stroke-linejoin=\"round\" d=\"";
    };
    if (cuts.empty()) {
      open_path();
      for (std::size_t i = 0; i < n; ++i) out << (i == 0 ? "M" : " L") << num(pts[i].x) << "," << num(pts[i].y);
      out << " Z\"/>\n";
      continue;
    }
    // Half-gap, shrunk so neighbouring gaps never merge.
    double half = config.under_gap / 2;
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double next = k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + total;
      half = std::min(half, 0.4 * (next - cuts[k]));
    }
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      const double from = cuts[k] + half;
      const double to = (k + 1 < cuts.size() ? cuts[k + 1] : cuts[0] + total) - half;
      open_path();
      const XY start = point_at(from);
      out << "M" << num(start.x) << "," << num(start.y);
      // Interior vertices strictly between the two ends.
      for (std::size_t lap = 0; lap < 2; ++lap)
        for (std::size_t i = 0; i < n; ++i) {
          const double s = at[i] + lap * total;
          if (s > from && s < to) out << " L" << num(pts[i].x) << "," << num(pts[i].y);
        }
      const XY end = point_at(to);
      out << " L" << num(end.x) << "," << num(end.y) << "\"/>\n";
    }
  }

  if (config.show_labels)
    for (const Crossing& x : diagram.crossings)
      out << "<text class=\"label\" x=\"" << num(f.px(to_double(x.position.x)) + sw * 2) << "\" y=\""
          << num(f.py(to_double(x.position.y)) - sw * 2) << "\" font-size=\"" << num(4 * sw + 4) << "\">" << x.id
          << "</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace divlink
