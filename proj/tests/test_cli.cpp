#include <doctest.h>

#include "divlink/cli.h"
#include "divlink/dsl.h"
#include "divlink/generators.h"

#include <json.hpp>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace divlink;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string corpus(const std::string& name) {
  return std::string(DIVLINK_SOURCE_DIR) + "/corpus/" + name + ".divide";
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("divide-cli-" + std::to_string(std::rand()) + "-" +
                                        std::to_string(reinterpret_cast<std::uintptr_t>(this)));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string write_temp(const TempDir& dir, const std::string& name, const std::string& text) {
  const std::string p = dir.file(name);
  std::ofstream(p, std::ios::binary) << text;
  return p;
}

// Unsheared Lissajous (2,3), symmetric about y = 0, so not generic.
std::string symmetric_lissajous() {
  DivideDocument doc;
  std::vector<Point2> v{{Rational(7, 10), Rational(7, 10)}};
  for (int i = 1; i < 14; ++i) {
    const double t = i / 14.0;
    v.push_back({round_to_grid(0.68 * std::cos(2 * M_PI * t), 10), round_to_grid(0.68 * std::cos(3 * M_PI * t), 10)});
  }
  v.push_back({Rational(7, 10), Rational(-7, 10)});
  doc.branches.push_back({BranchKind::Open, v});
  return serialize(doc);
}

// Set DIVLINK_UPDATE_GOLDEN=1 to rewrite the files instead of comparing.
void check_golden(const std::string& golden, const std::vector<std::string>& args) {
  const Result r = run(args);
  REQUIRE(r.code == 0);
  CHECK(nlohmann::json::accept(r.out));
  const fs::path p = fs::path(DIVLINK_SOURCE_DIR) / "tests" / "golden" / golden;
  if (std::getenv("DIVLINK_UPDATE_GOLDEN")) {
    std::ofstream(p, std::ios::binary) << r.out;
    return;
  }
  REQUIRE(fs::exists(p));
  CHECK(r.out == slurp(p));
}

}  // namespace

TEST_CASE("gen torus 3 4 then invariants --alexander") {
  TempDir dir;
  const std::string f = dir.file("e6.divide");
  Result g = run({"gen", "torus", "3", "4", "-o", f});
  REQUIRE(g.code == 0);
  Result r = run({"invariants", f, "--alexander"});
  CHECK(r.code == 0);
  CHECK(r.out == "t^6 - t^5 + t^3 - t + 1\n");
  CHECK(validate(read_document_file(f).branches).double_points().size() == 3);
}

TEST_CASE("diagram --pd on the monotone arc prints the unknot marker") {
  Result r = run({"diagram", corpus("monotone"), "--pd"});
  CHECK(r.code == 0);
  CHECK(r.out == "PD[Unknot]\n");
}

TEST_CASE("Jones over the cap exits 3") {
  TempDir dir;
  const std::string f = dir.file("huge.divide");
  REQUIRE(run({"gen", "torus", "5", "7", "-o", f}).code == 0);
  Result d = run({"diagram", f, "--json"});
  REQUIRE(d.code == 0);
  CHECK(nlohmann::json::parse(d.out)["crossings"].get<int>() >= 40);
  Result r = run({"invariants", f, "--jones"});
  CHECK(r.code == 3);
  CHECK(r.err.find("ResourceLimit") != std::string::npos);
  CHECK(r.out.empty());
  // A raised cap is honoured by the check itself.
  CHECK(run({"invariants", corpus("e6"), "--jones", "--jones-cap", "7"}).code == 3);
  CHECK(run({"invariants", corpus("e6"), "--conway", "--conway-cap", "7"}).code == 3);
}

TEST_CASE("--all skips what does not apply") {
  Result r = run({"invariants", corpus("cross"), "--all", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["alexander"].is_null());
  CHECK(j["skipped"].contains("alexander"));
  CHECK(j["conway"] == "z");
  CHECK(j["linking"][0][1] == 1);
  // Asked for explicitly, the same request is an error.
  CHECK(run({"invariants", corpus("cross"), "--alexander"}).code == 1);

  TempDir dir;
  const std::string f = dir.file("t45.divide");
  REQUIRE(run({"gen", "torus", "4", "5", "-o", f}).code == 0);
  Result big = run({"invariants", f, "--all", "--json"});
  REQUIRE(big.code == 0);
  const auto b = nlohmann::json::parse(big.out);
  CHECK(b["jones"].is_null());
  CHECK(b["alexander"] == "t^12 - t^11 + t^8 - t^6 + t^4 - t + 1");
}

TEST_CASE("exit codes") {
  TempDir dir;
  CHECK(run({}).code == 2);
  CHECK(run({"frobnicate"}).code == 2);
  CHECK(run({"info"}).code == 2);
  CHECK(run({"info", dir.file("missing.divide")}).code == 2);
  CHECK(run({"info", write_temp(dir, "bad.divide", "divide v1\nbranch open: (0,0) (1/2\n")}).code == 2);
  CHECK(run({"info", write_temp(dir, "range.divide", "divide v1\nbranch open: (0,0) (3,0)\n")}).code != 0);
  CHECK(run({"info", corpus("e6"), "--epsilon", "x/y"}).code == 2);
  CHECK(run({"info", corpus("e6"), "--jones-cap", "0"}).code == 1);
  CHECK(run({"info", corpus("e6"), "--epsilon", "-1/2"}).code == 1);
  CHECK(run({"gen", "torus", "0", "3"}).code == 1);
  CHECK(run({"gen", "example", "nope"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("errors become JSON with --json") {
  TempDir dir;
  Result r = run({"info", dir.file("missing.divide"), "--json"});
  CHECK(r.code == 2);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["error"]["code"] == "SyntaxError");
}

TEST_CASE("validate reports genericity") {
  CHECK(run({"validate", corpus("e6")}).code == 0);
  TempDir dir;
  // Mirror-symmetric about y = 0: both endpoints share x = 7/10.
  const std::string f = write_temp(dir, "symmetric.divide", symmetric_lissajous());
  Result r = run({"validate", f, "--json"});
  CHECK(r.code == 1);
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["valid"] == true);
  CHECK(j["generic"] == false);
  CHECK(j["violations"].size() >= 1);

  // Not an immersion: a repeated vertex.
  const std::string g = write_temp(dir, "repeat.divide", "divide v1\nbranch open: (0,-99/100) (0,-99/100) (1/2,1/2)\n");
  Result bad = run({"validate", g, "--json"});
  CHECK(bad.code == 1);
  CHECK(nlohmann::json::parse(bad.out)["valid"] == false);
}

TEST_CASE("perturb makes a divide generic and is seeded") {
  TempDir dir;
  const std::string f = write_temp(dir, "symmetric.divide", symmetric_lissajous());
  const std::string o = dir.file("fixed.divide");
  REQUIRE(run({"perturb", f, "-o", o, "--seed", "5"}).code == 0);
  CHECK(run({"validate", o}).code == 0);
  CHECK(run({"perturb", f, "--seed", "5"}).out == slurp(o));
  CHECK(run({"perturb", f, "--seed", "6"}).out != slurp(o));
  CHECK(run({"diagram", f}).code == 1);
  CHECK(run({"diagram", f, "--perturb"}).code == 0);
}

TEST_CASE("gen is deterministic and seeded") {
  const Result a = run({"gen", "random", "3", "--seed", "11"});
  REQUIRE(a.code == 0);
  CHECK(a.out == run({"gen", "random", "3", "--seed", "11"}).out);
  CHECK(a.out != run({"gen", "random", "3", "--seed", "12"}).out);
  CHECK(validate(parse_document(a.out).branches).branches().size() == 3);
  const Result e = run({"gen", "example", "e6"});
  CHECK(e.code == 0);
  CHECK(e.out == canned_source("e6"));
}

TEST_CASE("diagram codes and drawings") {
  TempDir dir;
  const std::string svg = dir.file("e6.svg");
  Result r = run({"diagram", corpus("e6"), "--pd", "--gauss", "--svg", svg});
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("PD[", 0) == 0);
  CHECK(r.out.find('\n') + 1 < r.out.size());
  CHECK(slurp(svg).find("class=\"strand\"") != std::string::npos);
  const std::string dsvg = dir.file("e6-divide.svg");
  REQUIRE(run({"info", corpus("e6"), "--svg", dsvg}).code == 0);
  CHECK(slurp(dsvg).find("class=\"double-point\"") != std::string::npos);
}

TEST_CASE("mirror gap and epsilon flags reach the builder") {
  Result a = run({"diagram", corpus("cross"), "--json", "--mirror-gap", "1/4", "--epsilon", "1/1000"});
  REQUIRE(a.code == 0);
  const auto j = nlohmann::json::parse(a.out);
  CHECK(j["mirror_y"] == "-5/4");
  CHECK(j["epsilon"] == "1/1000");
}

TEST_CASE("selftest passes on the frozen convention") {
  Result r = run({"selftest"});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") == std::string::npos);
  CHECK(r.out.find("PASS hopf linking number: expected 1, actual 1") != std::string::npos);
  CHECK(cli::selftest().ok());
}

TEST_CASE("selftest detects an inverted convention") {
  Result r = run({"selftest", "--invert-convention"});
  CHECK(r.code == 4);
  CHECK(r.err.find("CalibrationDrift") != std::string::npos);
  CHECK(r.out.find("FAIL hopf linking number: expected 1, actual -1") != std::string::npos);
  Convention c = default_convention();
  c.twist = Convention::Twist::FallingOver;
  const cli::SelftestReport rep = cli::selftest(c);
  CHECK_FALSE(rep.ok());
  try {
    cli::require_pass(rep);
    FAIL("no throw");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::CalibrationDrift);
  }
}

TEST_CASE("every subcommand is deterministic") {
  const std::vector<std::vector<std::string>> cmds{
      {"info", corpus("e6-alt2"), "--json"},
      {"diagram", corpus("ac-10-145"), "--pd", "--gauss"},
      {"invariants", corpus("e6"), "--all"},
      {"gen", "torus", "2", "5"},
      {"selftest", "--json"},
  };
  for (const auto& c : cmds) {
    CAPTURE(c[0]);
    const Result a = run(c), b = run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("JSON outputs match the golden files") {
  check_golden("validate-monotone.json", {"validate", corpus("monotone"), "--json"});
  check_golden("info-e6.json", {"info", corpus("e6"), "--json"});
  check_golden("diagram-cross.json", {"diagram", corpus("cross"), "--json"});
  check_golden("diagram-c-arc.json", {"diagram", corpus("c-arc"), "--json"});
  check_golden("invariants-e6.json", {"invariants", corpus("e6"), "--all", "--json"});
  check_golden("invariants-cross.json", {"invariants", corpus("cross"), "--all", "--json"});
  check_golden("gen-torus-2-3.json", {"gen", "torus", "2", "3", "--json"});
  check_golden("selftest.json", {"selftest", "--json"});
}
