#include "handlepsc/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <vector>

#include "handlepsc/errors.hpp"

namespace handlepsc {

std::string format_sig12(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json json_number(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

nlohmann::json to_json(const GridPoint& p) {
  return {{"theta", json_number(p.theta)}, {"t", json_number(p.t)}};
}

nlohmann::json to_json(const ScanReport& r) {
  nlohmann::json j;
  j["grid"] = {{"n_theta", r.n_theta},
               {"n_t", r.n_t},
               {"theta", {json_number(r.theta_lo), json_number(r.theta_hi)}},
               {"t", {json_number(r.t_lo), json_number(r.t_hi)}}};
  j["params"] = {{"variant", to_string(r.variant)},
                 {"R", json_number(r.R)},
                 {"T", json_number(r.half_width)},
                 {"theta0", json_number(r.theta0)},
                 {"eps1", json_number(r.eps1)},
                 {r.variant == ProfileVariant::ClassicR0 ? "r0" : "M", json_number(r.r0_or_m)}};
  j["min_S"] = json_number(r.min_s);
  j["argmin"] = to_json(r.argmin);
  j["verdict"] = r.positive ? "POSITIVE" : "NEGATIVE";
  j["evaluated"] = r.evaluated;
  j["excluded_r_negative"] = r.excluded_negative;
  j["excluded_r_floor"] = r.excluded_floor;
  j["r_floor"] = json_number(r.r_floor);
  j["leading_min"] = json_number(r.leading_min);
  j["leading_argmin"] = to_json(r.leading_argmin);
  return j;
}

std::string json_line(const nlohmann::json& j) { return j.dump(); }

void write_scan_csv(std::ostream& out, const ScanReport& r) {
  const std::size_t total = static_cast<std::size_t>(r.n_theta) * r.n_t;
  if (r.s_field.size() != total) {
    throw PreconditionError("write_scan_csv: report was scanned without keep_field");
  }
  out << "theta,t,S\n";
  for (int i = 0; i < r.n_theta; ++i) {
    const double theta =
        r.theta_lo + (r.theta_hi - r.theta_lo) * i / std::max(r.n_theta - 1, 1);
    for (int j = 0; j < r.n_t; ++j) {
      const double t = r.t_lo + (r.t_hi - r.t_lo) * j / std::max(r.n_t - 1, 1);
      const double s = r.s_field[static_cast<std::size_t>(i) * r.n_t + j];
      out << format_sig12(theta) << ',' << format_sig12(t) << ',' << format_sig12(s) << '\n';
    }
  }
}

void write_heatmap_ppm(const std::filesystem::path& path, const ScanReport& r) {
  const std::size_t total = static_cast<std::size_t>(r.n_theta) * r.n_t;
  if (r.s_field.size() != total || r.r_field.size() != total) {
    throw PreconditionError("write_heatmap_ppm: report was scanned without keep_field");
  }
  auto at = [&](const std::vector<double>& f, int i, int j) {
    return f[static_cast<std::size_t>(i) * r.n_t + j];
  };

  // Symmetric log scale anchored at the flat-region value 2 / R^2.
  const double anchor = 2.0 / (r.R * r.R);
  double peak = 0.0;
  for (const double s : r.s_field) {
    if (std::isfinite(s)) peak = std::max(peak, std::abs(s));
  }
  const double denom = std::log1p(std::max(peak, anchor) / anchor);

  const int width = r.n_t;
  const int height = r.n_theta;
  std::vector<unsigned char> pixels(static_cast<std::size_t>(width) * height * 3);
  for (int row = 0; row < height; ++row) {
    const int i = height - 1 - row;
    for (int j = 0; j < width; ++j) {
      unsigned char* px = &pixels[(static_cast<std::size_t>(row) * width + j) * 3];
      const double rv = at(r.r_field, i, j);
      bool contour = false;
      for (const auto& [di, dj] : {std::pair{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
        const int ni = i + di;
        const int nj = j + dj;
        if (ni < 0 || nj < 0 || ni >= height || nj >= width) continue;
        const double nv = at(r.r_field, ni, nj);
        // Mark the non-negative side of each sign change.
        if (rv >= 0.0 && nv < 0.0) contour = true;
      }
      const double s = at(r.s_field, i, j);
      if (contour) {
        px[0] = px[1] = px[2] = 0;
      } else if (!std::isfinite(s)) {
        px[0] = px[1] = px[2] = 160;
      } else {
        const double u = std::clamp(std::log1p(std::abs(s) / anchor) / denom, 0.0, 1.0);
        const auto fade = static_cast<unsigned char>(std::lround(255.0 * (1.0 - u)));
        if (s >= 0.0) {
          px[0] = 255;
          px[1] = px[2] = fade;
        } else {
          px[0] = px[1] = fade;
          px[2] = 255;
        }
      }
    }
  }

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "P6\n" << width << ' ' << height << "\n255\n";
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

}  // namespace handlepsc
