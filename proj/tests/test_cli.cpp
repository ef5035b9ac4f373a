#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "hurwitz/cli.hpp"

using namespace hurwitz;
using namespace hurwitz::cli;
using nlohmann::json;

namespace {

const std::string kFixtures = HURWITZ_FIXTURE_DIR;

struct Outcome {
  int code;
  json report;
  std::string log;
};

Outcome invoke(RunConfig cfg) {
  std::ostringstream out, log;
  const int code = run(cfg, out, log);
  json j;
  if (!out.str().empty()) j = json::parse(out.str());
  return {code, j, log.str()};
}

RunConfig config(const std::string& group, const std::string& command, const std::string& input = "") {
  RunConfig c;
  c.group = group;
  c.command = command;
  if (!input.empty()) c.input = kFixtures + "/" + input;
  return c;
}

cplx complex_of(const json& j) { return {j[0].get<double>(), j[1].get<double>()}; }

}  // namespace

TEST_CASE("tau poly on w^3 - 3w reports both routes and their ratio") {
  const auto o = invoke(config("tau", "poly", "poly_cubic.json"));
  REQUIRE(o.code == kOk);
  CHECK(std::abs(complex_of(o.report["outputs"]["tau24_product"]) + 36.0) < 1e-12);
  CHECK(std::abs(complex_of(o.report["outputs"]["tau24_resultant"]) + 108.0) < 1e-10);
  CHECK(std::abs(complex_of(o.report["outputs"]["ratio"]) - 3.0) < 1e-12);
  for (const char* key : {"inputs", "outputs", "discrepancies", "certificates", "elapsed"})
    CHECK(o.report.contains(key));
}

TEST_CASE("cone det-n0 with k = 1, R = 1 gives 2 pi") {
  auto cfg = config("cone", "det-n0");
  cfg.k = 1;
  cfg.R = 1.0;
  const auto o = invoke(cfg);
  REQUIRE(o.code == kOk);
  CHECK(std::abs(o.report["outputs"]["det_exterior"].get<double>() - 2.0 * std::numbers::pi) < 1e-12);
}

TEST_CASE("every command succeeds on the shipped fixtures") {
  const std::vector<std::tuple<std::string, std::string, std::string>> cases{
      {"cover", "validate", "cover_genus1.json"}, {"tau", "rational3", "rational3.json"},
      {"tau", "genus1", "curve_genus1.json"},     {"tau", "genus2", "curve_genus2.json"},
      {"verify", "rauch", "curve_genus1.json"},   {"verify", "vardwa", "poly_vardwa.json"},
      {"verify", "vardwa", "curve_genus1.json"},  {"verify", "vardwa", "curve_genus2.json"},
      {"verify", "varodin", "curve_genus1.json"}, {"verify", "clue", "curve_genus2.json"},
      {"cone", "dtn", ""},                        {"cone", "mu0-fit", ""},
      {"cone", "shift-fit", "cones.json"},
  };
  for (const auto& [g, c, in] : cases) {
    INFO(g << " " << c);
    const auto o = invoke(config(g, c, in));
    CHECK(o.code == kOk);
    CHECK(o.report["pass"].get<bool>());
  }
}

TEST_CASE("reports are byte-stable apart from elapsed") {
  auto a = invoke(config("tau", "genus2", "curve_genus2.json")).report;
  auto b = invoke(config("tau", "genus2", "curve_genus2.json")).report;
  a.erase("elapsed");
  b.erase("elapsed");
  CHECK(a.dump() == b.dump());
  auto r1 = config("tau", "rational3");
  r1.seed = 5;
  auto x = invoke(r1).report, y = invoke(r1).report;
  x.erase("elapsed");
  y.erase("elapsed");
  CHECK(x.dump() == y.dump());
}

TEST_CASE("usage errors exit 2, numerical failures exit 1 with the check named") {
  CHECK(invoke(config("tau", "poly")).code == kUsage);               // missing input
  CHECK(invoke(config("tau", "nothing")).code == kUsage);
  CHECK(invoke(config("verify", "clue", "absent.json")).code == kUsage);
  auto bad_tol = config("cone", "det-n0");
  bad_tol.tolerances = {"cone.det=0"};
  CHECK(invoke(bad_tol).code == kUsage);

  auto strict = config("cone", "det-n0");
  strict.tolerances = {"cone.det=1e-30"};
  const auto o = invoke(strict);
  CHECK(o.code == kNumericalFailure);
  CHECK(o.log.find("cone.det") != std::string::npos);

  // an invalid cover is a failed check, not a crash
  const auto dir = std::filesystem::temp_directory_path() / "hurwitz_cli_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "nontransitive.json";
  std::ofstream(path) << R"({"degree":3,"sigma_infinity":[[1,2]],"branches":[{"value":[0,0],"sigma":[[1,2]]}],"base_point":[0,-1]})";
  auto cv = config("cover", "validate");
  cv.input = path.string();
  const auto oc = invoke(cv);
  CHECK(oc.code == kNumericalFailure);
  CHECK(oc.log.find("cover.valid") != std::string::npos);
}

TEST_CASE("output goes to --out with CSV tables beside it") {
  const auto dir = std::filesystem::temp_directory_path() / "hurwitz_cli_test";
  std::filesystem::remove_all(dir);
  auto cfg = config("cone", "dtn");
  cfg.out = (dir / "dtn.json").string();
  cfg.nodes = 8;
  std::ostringstream out, log;
  REQUIRE(run(cfg, out, log) == kOk);
  CHECK(out.str().empty());
  CHECK(std::filesystem::exists(dir / "dtn.json"));
  std::ifstream csv(dir / "dtn.eigenvalues.csv");
  int lines = 0;
  for (std::string s; std::getline(csv, s);) ++lines;
  CHECK(lines == 10);  // header plus n = 0..8
}
