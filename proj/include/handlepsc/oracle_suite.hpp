#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "handlepsc/chart.hpp"
#include "handlepsc/profile.hpp"

namespace handlepsc {

/// Seeded uniform doubles in [0, 1) with a platform-independent stream.
class SampleStream {
 public:
  explicit SampleStream(std::uint64_t seed);
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

 private:
  std::mt19937_64 engine_;
};

struct SampleWindow {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;
  double r_floor = 0.02;
};

/// Sampling window for curvature comparisons: theta in
/// [theta0/2, pi/2 - max(eps1/2, 0.1)], t in [-1.25T, 1.25T], r >= r_floor.
/// The upper theta bound keeps the sec^2 - tan^2 cancellation out of the
/// finite-difference stencils.
SampleWindow default_sample_window(const HandleProfile& p);

/// Rejection-samples `n` chart points with r >= window.r_floor.
/// phi and alpha are uniform in [0, 2 pi).
std::vector<ChartPoint> sample_chart_points(const HandleProfile& p, const SampleWindow& window,
                                            int n, std::uint64_t seed);

struct OracleOptions {
  int points = 100;
  std::uint64_t seed = 42;
  double fd_step = 1e-4;
  double rel_tol = 1e-5;
  std::optional<SampleWindow> window;
  /// Name of a closed-form component to corrupt before comparing.
  std::optional<std::string> inject_fault;
};

/// Worst disagreement of one named component over all sampled points.
/// The error is |a - b| / (max(|a|, |b|) + scale), where scale is the
/// magnitude of the enclosing tensor at that point.
struct ComponentDiff {
  std::string name;
  double worst_error = 0.0;
  ChartPoint worst_at;
  double closed_value = 0.0;
  double oracle_value = 0.0;
  bool pass = true;
};

struct OracleReport {
  std::vector<ComponentDiff> components;
  int points = 0;
  double rel_tol = 0.0;
  double max_angular_derivative = 0.0;
  bool pass = true;

  /// Component with the largest error (first one on ties).
  const ComponentDiff& worst() const;
};

/// Diffs every closed-form quantity against the generic pipeline.
/// Classic charts: metric (against the finite-difference embedding
/// oracle), inverse metric, the four Christoffel matrices, all displayed
/// Riemann and Ricci components, and S. Radius-one charts: metric and S.
OracleReport run_oracle_suite(const HandleProfile& p, const ChartModel& model,
                              const OracleOptions& options);

/// Names accepted by OracleOptions::inject_fault for a chart kind.
std::vector<std::string> oracle_component_names(ChartModel::Kind kind);

}  // namespace handlepsc
