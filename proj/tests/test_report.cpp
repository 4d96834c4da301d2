#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <memory>
#include <numbers>
#include <sstream>

#include "handlepsc/errors.hpp"
#include "handlepsc/report.hpp"

using namespace handlepsc;

namespace {

ScanReport small_scan(bool keep) {
  static const auto step = std::make_shared<const SmoothStep>(SmoothStep::build(256));
  const auto p = HandleProfile::make(ProfileVariant::ClassicR0, 0.25, 10.0, 0.8,
                                     (std::numbers::pi / 2 - 0.8) / 100.0, step);
  ScanOptions o;
  o.n_theta = 30;
  o.n_t = 20;
  o.keep_field = keep;
  return scan_scalar_curvature(p, 0.5, o);
}

}  // namespace

TEST_CASE("twelve significant digits") {
  CHECK(format_sig12(0.1) == "0.1");
  CHECK(format_sig12(1.0 / 3.0) == "0.333333333333");
  CHECK(format_sig12(-2775.44913722414) == "-2775.44913722");
  CHECK(format_sig12(std::nan("")) == "nan");
  CHECK(format_sig12(-HUGE_VAL) == "-inf");
}

TEST_CASE("non-finite numbers become null") {
  CHECK(json_number(std::numeric_limits<double>::quiet_NaN()).is_null());
  CHECK(json_number(HUGE_VAL).is_null());
  CHECK(json_number(1.5).get<double>() == 1.5);
}

TEST_CASE("scan JSON carries the verdict and parameter echo") {
  const ScanReport r = small_scan(false);
  const auto j = to_json(r);
  CHECK(j["verdict"] == (r.positive ? "POSITIVE" : "NEGATIVE"));
  CHECK(j["params"]["r0"].get<double>() == 0.25);
  CHECK(j["params"]["T"].get<double>() == 10.0);
  CHECK(j["grid"]["n_theta"] == 30);
  const std::string line = json_line(j);
  CHECK(line.find('\n') == std::string::npos);
  CHECK(line == json_line(to_json(small_scan(false))));
}

TEST_CASE("CSV lists every grid point") {
  const ScanReport r = small_scan(true);
  std::ostringstream out;
  write_scan_csv(out, r);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta,t,S");
  int rows = 0, nans = 0;
  while (std::getline(in, line)) {
    ++rows;
    if (line.ends_with(",nan")) ++nans;
  }
  CHECK(rows == 30 * 20);
  CHECK(nans == r.excluded_negative);
  CHECK_THROWS_AS(write_scan_csv(out, small_scan(false)), PreconditionError);
}

TEST_CASE("heatmap is a P6 image of the grid") {
  const ScanReport r = small_scan(true);
  const auto path = std::filesystem::temp_directory_path() / "handlepsc_test_heatmap.ppm";
  write_heatmap_ppm(path, r);
  std::ifstream in(path, std::ios::binary);
  std::string magic;
  int w = 0, h = 0, maxval = 0;
  in >> magic >> w >> h >> maxval;
  in.get();
  CHECK(magic == "P6");
  CHECK(w == 20);
  CHECK(h == 30);
  CHECK(maxval == 255);
  std::string pixels((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(pixels.size() == static_cast<std::size_t>(3 * w * h));
  // Grey for r < 0, black along r = 0, both present in this scan.
  int grey = 0, black = 0;
  for (std::size_t i = 0; i + 2 < pixels.size(); i += 3) {
    const auto px = [&](int k) { return static_cast<unsigned char>(pixels[i + k]); };
    if (px(0) == 160 && px(1) == 160 && px(2) == 160) ++grey;
    if (px(0) == 0 && px(1) == 0 && px(2) == 0) ++black;
  }
  CHECK(grey > 0);
  CHECK(black > 0);
  std::filesystem::remove(path);
  CHECK_THROWS(write_heatmap_ppm("/nonexistent/dir/x.ppm", r));
}
