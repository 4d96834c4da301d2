#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>

#include <json.hpp>

#include "handlepsc/profile.hpp"

namespace handlepsc {

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitUsage = 2;

/// Everything a run depends on. Parameter-file keys are those of
/// ProfileConfig plus R, points, R_lo and R_hi.
struct RunConfig {
  std::string subcommand;
  std::optional<std::filesystem::path> params_path;
  std::optional<std::filesystem::path> config_path;
  std::optional<std::filesystem::path> out_dir;
  ProfileConfig profile;
  double big_r = 20.0;
  int points = 100;
  double r_lo = 1.0;
  double r_hi = 20.0;
  int grid_theta = 200;
  int grid_t = 200;
  std::uint64_t seed = 42;
  bool heatmap = false;
  std::optional<std::string> inject_fault;

  /// Reads the parameter file when one was given. Throws ParseError on
  /// unreadable files, malformed values and unknown keys.
  void load_params();

  nlohmann::json to_json() const;
};

/// Parses "NxM" with N, M >= 1.
std::pair<int, int> parse_grid(const std::string& text);

/// Entry point of the handlepsc executable. Prints one JSON record to `out`
/// and diagnostics to `err`. Returns 0 when the subcommand's suite passes,
/// 1 when it fails and 2 on usage or I/O errors.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace handlepsc
