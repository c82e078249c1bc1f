#include <doctest.h>

#include "divlink/error.h"
#include "divlink/generators.h"
#include "divlink/render.h"

#include <cmath>
#include <regex>
#include <set>

using namespace divlink;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (std::size_t pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

struct Strand {
  std::string d;
  bool closed;
};

std::vector<Strand> strands(const std::string& svg) {
  std::vector<Strand> out;
  const std::regex path(R"re(<path class="strand"[^>]*\sd="([^"]*)")re");
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), path); it != std::sregex_iterator(); ++it) {
    const std::string d = (*it)[1];
    out.push_back({d, d.find('Z') != std::string::npos});
  }
  return out;
}

// Number of breaks in the drawing: every open strand ends at one gap.
std::size_t gap_census(const std::string& svg) {
  std::size_t gaps = 0;
  for (const Strand& s : strands(svg))
    if (!s.closed) ++gaps;
  return gaps;
}

}  // namespace

TEST_CASE("divide rendering of a monotone arc") {
  const std::string svg = render_divide_svg(canned("monotone"));
  CHECK(count(svg, "<path") == 1);
  CHECK(count(svg, "class=\"double-point\"") == 0);
  CHECK(count(svg, "class=\"tangency\"") == 0);
  CHECK(count(svg, "class=\"boundary\"") == 1);
  CHECK(count(svg, "class=\"endpoint\"") == 2);
  CHECK(svg.rfind("</svg>") != std::string::npos);
}

TEST_CASE("divide rendering marks double points and tangencies") {
  const Divide e6 = canned("e6");
  const std::string svg = render_divide_svg(e6);
  CHECK(count(svg, "class=\"double-point\"") == 3);
  CHECK(count(svg, "class=\"tangency\"") == e6.tangencies().size());
  CHECK(count(svg, "<path") == 1);
  CHECK(count(render_divide_svg(torus_divide({2, 4})), "<path") == 2);
  CHECK(count(render_divide_svg(torus_divide({2, 4})), "class=\"endpoint\"") == 4);
}

TEST_CASE("rendering is deterministic") {
  const Divide e6 = canned("e6");
  CHECK(render_divide_svg(e6) == render_divide_svg(e6));
  const LinkDiagram g = build_diagram(e6);
  CHECK(render_diagram_svg(g) == render_diagram_svg(build_diagram(canned("e6"))));
}

TEST_CASE("unknot diagram is one closed path") {
  const std::string svg = render_diagram_svg(build_diagram(canned("monotone")));
  const auto s = strands(svg);
  REQUIRE(s.size() == 1);
  CHECK(s[0].closed);
  CHECK(gap_census(svg) == 0);
  CHECK(count(svg, "class=\"mirror\"") == 1);
}

TEST_CASE("c-arc diagram has exactly one gap") {
  CHECK(gap_census(render_diagram_svg(build_diagram(canned("c-arc")))) == 1);
}

TEST_CASE("gap census equals the crossing count") {
  std::vector<Divide> corpus;
  for (const auto& name : canned_names()) corpus.push_back(canned(name));
  corpus.push_back(torus_divide({3, 5}));
  corpus.push_back(torus_divide({2, 4}));
  for (const Divide& d : corpus) {
    const LinkDiagram g = build_diagram(d);
    const std::string svg = render_diagram_svg(g);
    CHECK(gap_census(svg) == g.crossing_count());
    std::set<std::string> components;
    const std::regex comp(R"re(data-component="(\d+)")re");
    for (auto it = std::sregex_iterator(svg.begin(), svg.end(), comp); it != std::sregex_iterator(); ++it)
      components.insert((*it)[1]);
    CHECK(components.size() == g.component_count());
  }
}

TEST_CASE("gaps sit on the crossings") {
  const LinkDiagram g = build_diagram(canned("e6"));
  RenderConfig cfg;
  const std::string svg = render_diagram_svg(g, cfg);
  // Strand ends, in px.
  std::vector<std::pair<double, double>> ends;
  const std::regex pt(R"re([ML](-?[\d.]+),(-?[\d.]+))re");
  for (const Strand& s : strands(svg)) {
    std::vector<std::pair<double, double>> pts;
    for (auto it = std::sregex_iterator(s.d.begin(), s.d.end(), pt); it != std::sregex_iterator(); ++it)
      pts.emplace_back(std::stod((*it)[1]), std::stod((*it)[2]));
    REQUIRE(pts.size() >= 2);
    ends.push_back(pts.front());
    ends.push_back(pts.back());
  }
  CHECK(ends.size() == 2 * g.crossing_count());
  // Each pair of ends across a gap is at most one gap width apart.
  std::size_t near = 0;
  for (std::size_t i = 0; i < ends.size(); ++i)
    for (std::size_t j = i + 1; j < ends.size(); ++j)
      if (std::hypot(ends[i].first - ends[j].first, ends[i].second - ends[j].second) <= cfg.under_gap + 0.05) ++near;
  CHECK(near >= g.crossing_count());
}

TEST_CASE("labels and mirror line are optional") {
  const LinkDiagram g = build_diagram(torus_divide({2, 3}));
  RenderConfig cfg;
  cfg.show_labels = true;
  cfg.show_mirror_line = false;
  const std::string svg = render_diagram_svg(g, cfg);
  CHECK(count(svg, "class=\"label\"") == 3);
  CHECK(count(svg, "class=\"mirror\"") == 0);
}

TEST_CASE("render config is checked") {
  RenderConfig cfg;
  cfg.under_gap = cfg.stroke_width;
  CHECK_THROWS_AS(render_divide_svg(canned("cross"), cfg), Error);
  cfg = {};
  cfg.canvas_size = 0;
  CHECK_THROWS_AS(render_diagram_svg(build_diagram(canned("cross")), cfg), Error);
}
