#pragma once

#include <filesystem>
#include <ostream>
#include <string>

#include <json.hpp>

#include "handlepsc/psc.hpp"

namespace handlepsc {

inline constexpr int kReportSchema = 1;

/// Decimal with 12 significant digits; "nan" / "inf" / "-inf" otherwise.
std::string format_sig12(double v);

/// Finite numbers as JSON numbers, anything else as null.
nlohmann::json json_number(double v);

nlohmann::json to_json(const GridPoint& p);
nlohmann::json to_json(const ScanReport& r);

/// One object per line, keys sorted.
std::string json_line(const nlohmann::json& j);

/// `theta,t,S` rows for every grid point, theta-major. Requires a report
/// scanned with keep_field; S is nan where the point was excluded.
void write_scan_csv(std::ostream& out, const ScanReport& r);

/// Binary PPM (P6) of S, one pixel per grid point: theta grows upward, t
/// to the right. Positive S is red, negative blue, excluded points grey,
/// and pixels where r changes sign against a neighbour are black (the
/// r = 0 contour). Throws std::runtime_error on I/O failure.
void write_heatmap_ppm(const std::filesystem::path& path, const ScanReport& r);

}  // namespace handlepsc
