#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "handlepsc/cli.hpp"
#include "handlepsc/errors.hpp"

using namespace handlepsc;

namespace {

std::string fixture(const char* name) { return std::string(HANDLEPSC_FIXTURES) + "/" + name; }

struct Run {
  int code = -1;
  std::string out;
  std::string err;
  nlohmann::json json() const { return nlohmann::json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "handlepsc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Run r;
  r.code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("grid text") {
  CHECK(parse_grid("200x100") == std::pair{200, 100});
  CHECK_THROWS_AS(parse_grid("200"), ParseError);
  CHECK_THROWS_AS(parse_grid("0x5"), ParseError);
  CHECK_THROWS_AS(parse_grid("3x"), ParseError);
  CHECK_THROWS_AS(parse_grid("axb"), ParseError);
}

TEST_CASE("verify-curvature passes and reports the worst component") {
  const Run r = run({"verify-curvature", "--params", fixture("baseline.params")});
  CHECK(r.code == kExitPass);
  const auto j = r.json();
  CHECK(j["schema"] == 1);
  CHECK(j["pass"] == true);
  CHECK(j["config"]["seed"] == 42);
  CHECK(j["config"]["points"] == 100);
  CHECK(j["worst"]["error"].get<double>() < 1e-5);
  CHECK(j["worst"].contains("at"));
}

TEST_CASE("verify-curvature names an injected fault") {
  const Run r = run({"verify-curvature", "--params", fixture("baseline.params"),
                     "--inject-fault", "Gamma^t_{theta theta}"});
  CHECK(r.code == kExitFail);
  CHECK(r.json()["failing"] == nlohmann::json::array({"Gamma^t_{theta theta}"}));
  CHECK(r.err.find("Gamma^t_{theta theta}") != std::string::npos);
}

TEST_CASE("usage errors exit 2") {
  CHECK(run({"verify-curvature", "--params", "/no/such/file"}).code == kExitUsage);
  CHECK(run({}).code == kExitUsage);
  CHECK(run({"bogus"}).code == kExitUsage);
  CHECK(run({"psc-scan", "--grid", "1x1"}).code == kExitUsage);
  CHECK(run({"psc-scan", "--grid", "banana"}).code == kExitUsage);
  CHECK(run({"psc-scan", "--heatmap"}).code == kExitUsage);
  CHECK(run({"config-check"}).code == kExitUsage);
  CHECK(run({"verify-curvature", "--inject-fault", "nope"}).code == kExitUsage);

  const auto bad = std::filesystem::temp_directory_path() / "handlepsc_bad.params";
  std::ofstream(bad) << "R = 20\nradius = 3\n";
  CHECK(run({"psc-scan", "--params", bad.string()}).code == kExitUsage);
  std::filesystem::remove(bad);
}

TEST_CASE("psc-scan writes CSV and heatmap") {
  const auto dir = std::filesystem::temp_directory_path() / "handlepsc_cli_scan";
  std::filesystem::remove_all(dir);
  const Run r = run({"psc-scan", "--params", fixture("baseline.params"), "--grid", "40x30",
                     "--out", dir.string(), "--heatmap"});
  CHECK(r.code == kExitPass);
  CHECK(r.json()["scan"]["verdict"] == "POSITIVE");
  std::istringstream csv(slurp(dir / "scan.csv"));
  std::string line;
  int rows = -1;
  while (std::getline(csv, line)) ++rows;
  CHECK(rows == 40 * 30);
  CHECK(slurp(dir / "heatmap.ppm").rfind("P6\n30 40\n255\n", 0) == 0);
  CHECK(slurp(dir / "report.json") == r.out);
  std::filesystem::remove_all(dir);
}

TEST_CASE("psc-scan at R = 0.1 is negative") {
  const Run r = run({"psc-scan", "--params", fixture("small_r.params"), "--grid", "100x100"});
  CHECK(r.code == kExitFail);
  const auto j = r.json();
  CHECK(j["scan"]["verdict"] == "NEGATIVE");
  CHECK(j["scan"]["min_S"].get<double>() < 0.0);
  CHECK(j["scan"]["argmin"].contains("theta"));
}

TEST_CASE("find-r, regions and step-check") {
  const Run f = run({"find-r", "--params", fixture("baseline.params"), "--grid", "80x80"});
  CHECK(f.code == kExitPass);
  CHECK(f.json()["R_star"].get<double>() > 1.0);

  const Run g = run({"regions", "--params", fixture("baseline.params")});
  CHECK(g.code == kExitPass);
  CHECK(g.json()["eps"].get<double>() > 0.0);
  CHECK(g.json()["minima"].size() == 5);

  const Run s = run({"step-check"});
  CHECK(s.code == kExitPass);
  CHECK(s.json()["normalization"].get<double>() ==
        doctest::Approx(142.25037577709586813).epsilon(1e-14));
}

TEST_CASE("find-r fails when R_hi is not certified") {
  const auto p = std::filesystem::temp_directory_path() / "handlepsc_narrow.params";
  std::ofstream(p) << "R_lo = 0.1\nR_hi = 0.2\n";
  const Run r = run({"find-r", "--params", p.string(), "--grid", "60x60"});
  CHECK(r.code == kExitFail);
  CHECK(r.json()["found"] == false);
  std::filesystem::remove(p);
}

TEST_CASE("config-check") {
  const Run a = run({"config-check", "--config", fixture("trefoil_a.cfg")});
  CHECK(a.code == kExitPass);
  CHECK(a.json()["verdict"]["applicable"] == true);
  const Run b = run({"config-check", "--config", fixture("trefoil_b.cfg")});
  CHECK(b.code == kExitFail);
  CHECK(b.json()["verdict"]["applicable"] == false);
  CHECK(run({"config-check", "--config", "/no/such.cfg"}).code == kExitUsage);
}

TEST_CASE("identical runs give identical bytes") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"verify-curvature", "--params", fixture("baseline.params"),
                                 "--seed", "7"},
        std::vector<std::string>{"psc-scan", "--params", fixture("radius_one.params"), "--grid",
                                 "50x50"}}) {
    const Run a = run(args);
    const Run b = run(args);
    CHECK(a.out == b.out);
    CHECK_FALSE(a.out.empty());
  }
  const Run s7 = run({"verify-curvature", "--params", fixture("baseline.params"), "--seed", "7"});
  const Run s8 = run({"verify-curvature", "--params", fixture("baseline.params"), "--seed", "8"});
  CHECK(s7.out != s8.out);
}
