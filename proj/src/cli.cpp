#include "divlink/cli.h"

#include "divlink/dsl.h"
#include "divlink/generators.h"
#include "divlink/invariants.h"
#include "divlink/render.h"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <functional>
#include <numeric>
#include <sstream>

namespace divlink::cli {

using Json = nlohmann::ordered_json;

namespace {

const Rational kDefaultJitter{1, 4096};

std::string yes_no(bool v) { return v ? "yes" : "no"; }

LaurentPolynomial right_trefoil_jones() {
  LaurentPolynomial p(Variable::SqrtT);
  p += LaurentPolynomial::monomial(Variable::SqrtT, 2, 1);
  p += LaurentPolynomial::monomial(Variable::SqrtT, 6, 1);
  p += LaurentPolynomial::monomial(Variable::SqrtT, 8, -1);
  return p;
}

bool calibrates(const Convention& c) {
  BuildOptions opts;
  opts.convention = c;
  const LinkDiagram hopf = build_diagram(canned("cross"), opts);
  const LinkDiagram trefoil = build_diagram(torus_divide({2, 3}), opts);
  const WritheAndLinking hw = writhe_and_linking(hopf);
  return hopf.component_count() == 2 && hw.linking[0][1] == 1 && conway_skein(hopf).to_string() == "z" &&
         writhe_and_linking(trefoil).writhe == 3 && jones_kauffman(trefoil) == right_trefoil_jones();
}

std::vector<Convention> all_conventions() {
  std::vector<Convention> out;
  for (auto s : {Convention::Slope::LargerOver, Convention::Slope::SmallerOver})
    for (auto t : {Convention::Twist::FallingOver, Convention::Twist::RisingOver}) out.push_back({s, t});
  return out;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
  f << text;
  if (!f) throw Error(ErrorCode::InvalidParams, "cannot write " + path);
}

// Loads and validates a file; with `perturb`, a non-generic divide is jittered.
Divide load_divide(const std::string& path, const CliConfig& cfg, bool perturb, DivideDocument* doc_out = nullptr) {
  DivideDocument doc = read_document_file(path);
  if (doc_out) *doc_out = doc;
  if (perturb) return perturb_to_generic(doc.branches, kDefaultJitter, cfg.seed);
  return validate(doc.branches);
}

Json violations_json(const GenericityReport& r) {
  Json arr = Json::array();
  for (const Violation& v : r.violations)
    arr.push_back({{"code", violation_code_name(v.code)}, {"description", v.description}, {"elements", v.elements}});
  return arr;
}

Json point_json(const Point2& p) { return {{"x", to_string(p.x)}, {"y", to_string(p.y)}}; }

BuildOptions build_options(const CliConfig& cfg) {
  BuildOptions opts;
  opts.mirror_gap = cfg.mirror_gap;
  opts.epsilon = cfg.epsilon;
  return opts;
}

struct Context {
  CliConfig cfg;
  std::ostream& out;
  std::ostream& err;
};

// ---- subcommands ----------------------------------------------------------

int cmd_validate(Context& ctx, const std::string& path) {
  const DivideDocument doc = read_document_file(path);
  Json j;
  try {
    const Divide d = validate(doc.branches);
    const GenericityReport r = genericity_check(d);
    j["valid"] = true;
    j["generic"] = r.generic;
    j["violations"] = violations_json(r);
    if (ctx.cfg.json) {
      ctx.out << j.dump(2) << "\n";
    } else {
      ctx.out << path << ": valid, " << (r.generic ? "generic" : "not generic") << "\n";
      for (const Violation& v : r.violations) ctx.out << "  " << violation_code_name(v.code) << ": " << v.description << "\n";
    }
    return r.generic ? kExitOk : kExitValidation;
  } catch (const Error& e) {
    if (exit_code(e.code()) != kExitValidation) throw;
    j["valid"] = false;
    j["generic"] = false;
    j["violations"] = Json::array();
    j["error"] = {{"code", error_code_name(e.code())}, {"message", e.what()}};
    if (ctx.cfg.json)
      ctx.out << j.dump(2) << "\n";
    else
      ctx.out << path << ": invalid\n  " << e.what() << "\n";
    return kExitValidation;
  }
}

int cmd_info(Context& ctx, const std::string& path, const std::string& svg) {
  DivideDocument doc;
  const Divide d = load_divide(path, ctx.cfg, false, &doc);
  const GenericityReport r = genericity_check(d);
  if (!svg.empty()) write_file(svg, render_divide_svg(d));
  if (ctx.cfg.json) {
    Json j;
    j["name"] = doc.name ? Json(*doc.name) : Json(nullptr);
    Json branches = Json::array();
    for (const Branch& b : d.branches())
      branches.push_back({{"kind", b.closed() ? "closed" : "open"}, {"vertices", b.vertices.size()}});
    j["branches"] = branches;
    Json dps = Json::array();
    for (const DoublePoint& dp : d.double_points())
      dps.push_back({{"position", point_json(dp.position)},
                     {"branches", {dp.incidences[0].branch, dp.incidences[1].branch}}});
    j["double_points"] = dps;
    Json tans = Json::array();
    for (const Tangency& t : d.tangencies())
      tans.push_back({{"kind", t.kind == TangencyKind::XMin ? "xmin" : "xmax"},
                      {"branch", t.branch},
                      {"vertex", t.vertex},
                      {"position", point_json(t.position)}});
    j["tangencies"] = tans;
    j["generic"] = r.generic;
    j["violations"] = violations_json(r);
    ctx.out << j.dump(2) << "\n";
    return kExitOk;
  }
  std::size_t vertices = 0, closed = 0;
  for (const Branch& b : d.branches()) {
    vertices += b.vertices.size();
    if (b.closed()) ++closed;
  }
  if (doc.name) ctx.out << "name: " << *doc.name << "\n";
  ctx.out << "branches: " << d.branches().size() << " (" << d.branches().size() - closed << " open, " << closed
          << " closed)\n";
  ctx.out << "vertices: " << vertices << "\n";
  ctx.out << "double points: " << d.double_points().size() << "\n";
  for (const DoublePoint& dp : d.double_points())
    ctx.out << "  " << to_string(dp.position) << " branches " << dp.incidences[0].branch << "," << dp.incidences[1].branch
            << "\n";
  ctx.out << "tangencies: " << d.tangencies().size() << "\n";
  for (const Tangency& t : d.tangencies())
    ctx.out << "  " << (t.kind == TangencyKind::XMin ? "xmin " : "xmax ") << to_string(t.position) << " branch "
            << t.branch << " vertex " << t.vertex << "\n";
  ctx.out << "generic: " << yes_no(r.generic) << "\n";
  for (const Violation& v : r.violations) ctx.out << "  " << violation_code_name(v.code) << ": " << v.description << "\n";
  return kExitOk;
}

int cmd_perturb(Context& ctx, const std::string& path, const std::string& output) {
  const DivideDocument doc = read_document_file(path);
  const Rational eps = ctx.cfg.epsilon.value_or(kDefaultJitter);
  const Divide d = perturb_to_generic(doc.branches, eps, ctx.cfg.seed);
  DivideDocument res = to_document(d, doc.name);
  res.comment = doc.comment;
  const std::string text = serialize(res);
  const bool changed = d.branches() != doc.branches;
  if (!output.empty()) write_file(output, text);
  if (ctx.cfg.json) {
    Json j;
    j["changed"] = changed;
    j["double_points"] = d.double_points().size();
    j["divide"] = output.empty() ? Json(text) : Json(nullptr);
    j["output"] = output.empty() ? Json(nullptr) : Json(output);
    ctx.out << j.dump(2) << "\n";
  } else if (output.empty()) {
    ctx.out << text;
  } else {
    ctx.out << "wrote " << output << (changed ? "" : " (unchanged)") << "\n";
  }
  return kExitOk;
}

struct DiagramFlags {
  bool pd = false, gauss = false, perturb = false, labels = false;
  std::string svg;
};

int cmd_diagram(Context& ctx, const std::string& path, const DiagramFlags& f) {
  const Divide d = load_divide(path, ctx.cfg, f.perturb);
  const LinkDiagram g = build_diagram(d, build_options(ctx.cfg));
  if (!f.svg.empty()) {
    RenderConfig rc;
    rc.show_labels = f.labels;
    write_file(f.svg, render_diagram_svg(g, rc));
  }
  const PDCode pd = pd_code(g);
  const GaussCode gauss = gauss_code(g);
  if (ctx.cfg.json) {
    Json j;
    j["components"] = g.component_count();
    j["crossings"] = g.crossing_count();
    j["free_loops"] = g.free_loop_count();
    j["convention"] = convention_name(g.convention);
    j["mirror_y"] = to_string(g.mirror_y);
    j["epsilon"] = to_string(g.epsilon);
    j["involution"] = involution_check(g);
    Json xs = Json::array();
    for (const Crossing& x : g.crossings)
      xs.push_back({{"id", x.id},
                    {"role", crossing_role_name(x.role)},
                    {"sign", x.sign},
                    {"position", point_json(x.position)},
                    {"over_component", x.over.component},
                    {"under_component", x.under.component}});
    j["crossing_list"] = xs;
    j["pd"] = pd.to_string();
    j["gauss"] = gauss.to_string();
    j["svg"] = f.svg.empty() ? Json(nullptr) : Json(f.svg);
    ctx.out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (f.pd) ctx.out << pd.to_string() << "\n";
  if (f.gauss) ctx.out << gauss.to_string() << "\n";
  if (!f.pd && !f.gauss) {
    ctx.out << "components: " << g.component_count() << "\n";
    ctx.out << "crossings: " << g.crossing_count() << "\n";
    ctx.out << "free loops: " << g.free_loop_count() << "\n";
    ctx.out << "convention: " << convention_name(g.convention) << "\n";
    ctx.out << "involution: " << yes_no(involution_check(g)) << "\n";
    for (const Crossing& x : g.crossings)
      ctx.out << "  " << x.id << " " << crossing_role_name(x.role) << " " << (x.sign > 0 ? "+" : "-") << " "
              << to_string(x.position) << "\n";
  }
  if (!f.svg.empty() && !f.pd && !f.gauss) ctx.out << "wrote " << f.svg << "\n";
  return kExitOk;
}

struct InvariantFlags {
  bool alexander = false, conway = false, jones = false, linking = false, all = false, perturb = false;
};

int cmd_invariants(Context& ctx, const std::string& path, InvariantFlags f) {
  const Divide d = load_divide(path, ctx.cfg, f.perturb);
  const LinkDiagram g = build_diagram(d, build_options(ctx.cfg));
  if (f.all) f.alexander = f.conway = f.jones = f.linking = true;
  if (!f.alexander && !f.conway && !f.jones && !f.linking) f.all = f.alexander = f.conway = f.jones = f.linking = true;

  // Under --all, a link skips Alexander and an over-cap diagram skips the
  // capped polynomial; an explicit request reports the error instead.
  struct Value {
    std::string name;
    std::optional<std::string> text;
    std::string note;
  };
  std::vector<Value> values;
  auto compute = [&](const std::string& name, const std::function<std::string()>& fn) {
    try {
      values.push_back({name, fn(), ""});
    } catch (const Error& e) {
      if (!f.all || (e.code() != ErrorCode::ResourceLimit && e.code() != ErrorCode::MultiComponent)) throw;
      values.push_back({name, std::nullopt, e.what()});
    }
  };
  const WritheAndLinking wl = writhe_and_linking(g);
  if (f.alexander)
    compute("alexander", [&] {
      if (g.component_count() != 1)
        throw Error(ErrorCode::MultiComponent,
                    "Alexander polynomial is reported for knots only; this link has " +
                        std::to_string(g.component_count()) + " components (use --conway)");
      return alexander_fox(g).to_string();
    });
  if (f.conway) compute("conway", [&] { return conway_skein(g, ctx.cfg.conway_cap).to_string(); });
  if (f.jones) compute("jones", [&] { return jones_kauffman(g, ctx.cfg.jones_cap).to_string(); });

  if (ctx.cfg.json) {
    Json j;
    j["components"] = g.component_count();
    j["crossings"] = g.crossing_count();
    if (f.linking) {
      j["writhe"] = wl.writhe;
      j["linking"] = wl.linking;
    }
    Json skipped = Json::object();
    for (const Value& v : values) {
      j[v.name] = v.text ? Json(*v.text) : Json(nullptr);
      if (!v.text) skipped[v.name] = v.note;
    }
    j["skipped"] = skipped;
    ctx.out << j.dump(2) << "\n";
    return kExitOk;
  }
  const bool single = values.size() == 1 && !f.linking;
  if (single) {
    ctx.out << *values[0].text << "\n";
    return kExitOk;
  }
  ctx.out << "components: " << g.component_count() << "\n";
  ctx.out << "crossings: " << g.crossing_count() << "\n";
  for (const Value& v : values)
    ctx.out << v.name << ": " << (v.text ? *v.text : "skipped (" + v.note + ")") << "\n";
  if (f.linking) {
    ctx.out << "writhe: " << wl.writhe << "\n";
    for (std::size_t a = 0; a < wl.linking.size(); ++a)
      for (std::size_t b = a + 1; b < wl.linking.size(); ++b)
        ctx.out << "lk(" << a + 1 << "," << b + 1 << "): " << wl.linking[a][b] << "\n";
  }
  return kExitOk;
}

int emit_generated(Context& ctx, const std::string& text, const Divide& d, const std::string& output) {
  if (!output.empty()) write_file(output, text);
  if (ctx.cfg.json) {
    Json j;
    j["branches"] = d.branches().size();
    j["double_points"] = d.double_points().size();
    j["tangencies"] = d.tangencies().size();
    j["divide"] = output.empty() ? Json(text) : Json(nullptr);
    j["output"] = output.empty() ? Json(nullptr) : Json(output);
    ctx.out << j.dump(2) << "\n";
  } else if (output.empty()) {
    ctx.out << text;
  } else {
    ctx.out << "wrote " << output << "\n";
  }
  return kExitOk;
}

int cmd_selftest(Context& ctx, bool invert) {
  Convention c = default_convention();
  if (invert) {
    c.slope = c.slope == Convention::Slope::SmallerOver ? Convention::Slope::LargerOver : Convention::Slope::SmallerOver;
    c.twist = c.twist == Convention::Twist::RisingOver ? Convention::Twist::FallingOver : Convention::Twist::RisingOver;
  }
  const SelftestReport r = selftest(c);
  if (ctx.cfg.json) {
    Json j;
    j["convention"] = convention_name(r.convention);
    Json checks = Json::array();
    for (const SelftestCheck& k : r.checks)
      checks.push_back({{"name", k.name}, {"expected", k.expected}, {"actual", k.actual}, {"pass", k.pass}});
    j["checks"] = checks;
    j["ok"] = r.ok();
    ctx.out << j.dump(2) << "\n";
  } else {
    ctx.out << "convention: " << convention_name(r.convention) << "\n";
    for (const SelftestCheck& k : r.checks)
      ctx.out << (k.pass ? "PASS " : "FAIL ") << k.name << ": expected " << k.expected << ", actual " << k.actual
              << "\n";
  }
  require_pass(r);
  return kExitOk;
}

}  // namespace

void check_config(const CliConfig& config) {
  if (config.jones_cap == 0 || config.conway_cap == 0)
    throw Error(ErrorCode::InvalidParams, "crossing caps must be positive");
  if (config.epsilon && *config.epsilon <= 0) throw Error(ErrorCode::InvalidParams, "epsilon must be positive");
  if (config.mirror_gap <= 0) throw Error(ErrorCode::InvalidParams, "mirror gap must be positive");
}

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::SyntaxError:
    case ErrorCode::RangeError:
      return kExitParse;
    case ErrorCode::ResourceLimit:
      return kExitResource;
    case ErrorCode::CalibrationDrift:
    case ErrorCode::Internal:
      return kExitInternal;
    default:
      return kExitValidation;
  }
}

bool SelftestReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const SelftestCheck& c) { return c.pass; });
}

SelftestReport selftest(const Convention& convention) {
  SelftestReport r;
  r.convention = convention;
  auto add = [&](std::string name, std::string expected, std::string actual) {
    const bool pass = expected == actual;
    r.checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
  };
  BuildOptions opts;
  opts.convention = convention;

  const LinkDiagram hopf = build_diagram(canned("cross"), opts);
  const WritheAndLinking hw = writhe_and_linking(hopf);
  add("hopf components", "2", std::to_string(hopf.component_count()));
  add("hopf linking number", "1", hw.linking.size() == 2 ? std::to_string(hw.linking[0][1]) : "n/a");
  add("hopf conway", "z", conway_skein(hopf).to_string());

  const LinkDiagram trefoil = build_diagram(torus_divide({2, 3}), opts);
  add("trefoil writhe", "3", std::to_string(writhe_and_linking(trefoil).writhe));
  add("trefoil jones", right_trefoil_jones().to_string(), jones_kauffman(trefoil).to_string());

  std::vector<std::string> passing;
  for (const Convention& c : all_conventions())
    if (calibrates(c)) passing.push_back(convention_name(c));
  add("passing conventions", convention_name(convention),
      passing.empty() ? "none"
                      : std::accumulate(std::next(passing.begin()), passing.end(), passing.front(),
                                        [](std::string a, const std::string& b) { return a + "," + b; }));

  for (const std::string& name : canned_names())
    add("involution " + name, "true", involution_check(build_diagram(canned(name), opts)) ? "true" : "false");
  return r;
}

void require_pass(const SelftestReport& report) {
  for (const SelftestCheck& c : report.checks)
    if (!c.pass)
      throw Error(ErrorCode::CalibrationDrift,
                  c.name + ": expected " + c.expected + ", actual " + c.actual);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Context ctx{CliConfig{}, out, err};
  CliConfig& cfg = ctx.cfg;
  std::string epsilon_text, gap_text;

  CLI::App app{"Links of divides: validate divides, build link diagrams, compute invariants.", "divide"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--seed", cfg.seed, "Seed for all randomness")->capture_default_str();
  app.add_option("--epsilon", epsilon_text, "perturb: jitter bound; diagram, invariants: string spacing");
  app.add_option("--mirror-gap", gap_text, "Gap between the divide and its mirror (default 1/2)");
  app.add_option("--jones-cap", cfg.jones_cap, "Maximum crossings for Jones")->capture_default_str();
  app.add_option("--conway-cap", cfg.conway_cap, "Maximum crossings for Conway")->capture_default_str();
  app.add_flag("--json", cfg.json, "Machine-readable output");

  std::string file, output, svg;
  std::function<int()> action;

  auto* validate_cmd = app.add_subcommand("validate", "Check a divide file; exit 1 unless valid and generic");
  validate_cmd->add_option("file", file)->required();
  validate_cmd->callback([&] { action = [&] { return cmd_validate(ctx, file); }; });

  auto* info_cmd = app.add_subcommand("info", "Double points, tangencies, genericity");
  info_cmd->add_option("file", file)->required();
  info_cmd->add_option("--svg", svg, "Write a drawing of the divide");
  info_cmd->callback([&] { action = [&] { return cmd_info(ctx, file, svg); }; });

  auto* perturb_cmd = app.add_subcommand("perturb", "Seeded jitter to a generic divide");
  perturb_cmd->add_option("file", file)->required();
  perturb_cmd->add_option("-o,--output", output, "Output .divide file (default stdout)");
  perturb_cmd->callback([&] { action = [&] { return cmd_perturb(ctx, file, output); }; });

  DiagramFlags df;
  auto* diagram_cmd = app.add_subcommand("diagram", "Build the link diagram");
  diagram_cmd->add_option("file", file)->required();
  diagram_cmd->add_flag("--pd", df.pd, "Print the PD code");
  diagram_cmd->add_flag("--gauss", df.gauss, "Print the Gauss code");
  diagram_cmd->add_option("--svg", df.svg, "Write a drawing of the diagram");
  diagram_cmd->add_flag("--labels", df.labels, "Crossing ids in the drawing");
  diagram_cmd->add_flag("--perturb", df.perturb, "Make the divide generic first");
  diagram_cmd->callback([&] { action = [&] { return cmd_diagram(ctx, file, df); }; });

  InvariantFlags inf;
  auto* inv_cmd = app.add_subcommand("invariants", "Alexander, Conway, Jones, linking numbers");
  inv_cmd->add_option("file", file)->required();
  inv_cmd->add_flag("--alexander", inf.alexander, "Normalized Alexander polynomial (knots)");
  inv_cmd->add_flag("--conway", inf.conway, "Conway polynomial");
  inv_cmd->add_flag("--jones", inf.jones, "Jones polynomial");
  inv_cmd->add_flag("--linking", inf.linking, "Writhe and pairwise linking numbers");
  inv_cmd->add_flag("--all", inf.all, "Everything; skips what does not apply");
  inv_cmd->add_flag("--perturb", inf.perturb, "Make the divide generic first");
  inv_cmd->callback([&] { action = [&] { return cmd_invariants(ctx, file, inf); }; });

  auto* gen_cmd = app.add_subcommand("gen", "Generate a divide");
  gen_cmd->require_subcommand(1);
  gen_cmd->fallthrough();
  gen_cmd->add_option("-o,--output", output, "Output .divide file (default stdout)");
  int p = 0, q = 0, samples = 0, n = 0, max_vertices = 8;
  std::string name;
  auto* torus_cmd = gen_cmd->add_subcommand("torus", "Lissajous divide of the (P, Q) torus link");
  torus_cmd->add_option("P", p)->required();
  torus_cmd->add_option("Q", q)->required();
  torus_cmd->add_option("--samples", samples, "Polyline samples (0 picks the minimum)");
  torus_cmd->callback([&] {
    action = [&] {
      const Divide d = torus_divide({p, q, samples}, cfg.seed);
      return emit_generated(ctx, serialize(to_document(d, "torus-" + std::to_string(p) + "-" + std::to_string(q))), d,
                            output);
    };
  });
  auto* example_cmd = gen_cmd->add_subcommand("example", "A built-in corpus divide");
  example_cmd->add_option("NAME", name)->required();
  example_cmd->callback([&] { action = [&] { return emit_generated(ctx, canned_source(name), canned(name), output); }; });
  auto* random_cmd = gen_cmd->add_subcommand("random", "Seeded random divide with N open branches");
  random_cmd->add_option("N", n)->required();
  random_cmd->add_option("--max-vertices", max_vertices, "Vertices per branch")->capture_default_str();
  random_cmd->callback([&] {
    action = [&] {
      const Divide d = random_divide(n, max_vertices, cfg.seed);
      return emit_generated(
          ctx, serialize(to_document(d, "random-" + std::to_string(n) + "-" + std::to_string(cfg.seed))), d, output);
    };
  });

  bool invert = false;
  auto* selftest_cmd = app.add_subcommand("selftest", "Check the frozen crossing convention");
  selftest_cmd->add_flag("--invert-convention", invert)->group("");
  selftest_cmd->callback([&] { action = [&] { return cmd_selftest(ctx, invert); }; });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitParse;
  }

  auto report = [&](int code, const std::string& error_name, const std::string& message) {
    err << message << "\n";
    if (cfg.json) out << Json{{"error", {{"code", error_name}, {"message", message}}}}.dump(2) << "\n";
    return code;
  };
  try {
    if (!epsilon_text.empty()) cfg.epsilon = parse_rational(epsilon_text);
    if (!gap_text.empty()) cfg.mirror_gap = parse_rational(gap_text);
  } catch (const std::invalid_argument& e) {
    return report(kExitParse, "SyntaxError", std::string("SyntaxError: bad rational: ") + e.what());
  }
  try {
    check_config(cfg);
    return action ? action() : kExitInternal;
  } catch (const Error& e) {
    return report(exit_code(e.code()), std::string(error_code_name(e.code())), e.what());
  } catch (const std::exception& e) {
    return report(kExitInternal, "Internal", std::string("Internal: ") + e.what());
  }
}

}  // namespace divlink::cli
