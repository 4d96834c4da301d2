#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "handlepsc/chart.hpp"
#include "handlepsc/profile.hpp"

namespace handlepsc {

/// N(theta, t) = 16 r^2 R^2 + 4 R^4 r_t^2 + 4 R^2 r_th^2 - 8 R^4 r r_tt
///               - 8 R^2 r r_thth + 8 r R^2 r_th tan(theta).
double leading_term_N(const HandleProfile& p, double theta, double t, double R);

struct LeadingTermScan {
  double min_value = 0.0;
  GridPoint argmin;
  long evaluated = 0;
};

/// Minimum of N over [theta0, pi/2 - eps1] x [-T, T] restricted to r >= 0.
LeadingTermScan scan_leading_term(const HandleProfile& p, double R, int n_theta = 200,
                                  int n_t = 200);

// ---------------------------------------------------------------------------
// Region inequality

struct Rect {
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  bool degenerate() const { return !(theta_hi > theta_lo) || !(t_hi > t_lo); }
  bool contains(double theta, double t) const {
    return theta >= theta_lo && theta <= theta_hi && t >= t_lo && t <= t_hi;
  }
};

/// Five blocks covering the L-shaped set where the inequality is needed,
/// {theta < a + eps or t < -T + eps} inside [a, pi/2 - eps1] x [-T, T]
/// with a = theta0 + eps1:
///   A = [a, a+eps] x [0, T]          C = [a, a+eps] x [-T+eps, 0]
///   D = [a, a+eps] x [-T, -T+eps]
///   E = [a+eps, theta1] x [-T, -T+eps]
///   B = [max(theta1, a+eps), pi/2 - eps1] x [-T, -T+eps]
/// where theta1 = (3 theta0 + pi/2) / 4. E is degenerate when a + eps >= theta1.
struct RegionPartition {
  double theta0 = 0.0;
  double eps1 = 0.0;
  double eps = 0.0;
  double half_width = 0.0;
  double theta_split = 0.0;
  std::array<Rect, 5> blocks;  // A, B, C, D, E

  static constexpr std::array<char, 5> kNames = {'A', 'B', 'C', 'D', 'E'};
  /// True when (theta, t) lies in the L-shaped target set.
  bool in_target(double theta, double t) const;
};

/// Requires 0 < eps < (pi/2 - theta0 - eps1) / 2 and eps < T.
RegionPartition region_partition(double theta0, double eps1, double eps, double T);

/// Q P'' + Q'' P - Q' P tan(theta); the tan term is 0 where Q' == 0.
double region_lhs(const HandleProfile& p, double theta, double t);

struct RegionMin {
  double value = 0.0;
  GridPoint argmin;
  bool evaluated = false;  // false for a degenerate block
};

/// Minimum of region_lhs on an n_theta x n_t grid over the block (>= 128
/// points per side).
RegionMin region_inequality_min(const HandleProfile& p, const Rect& block, int n_theta = 128,
                                int n_t = 128);

struct EpsilonTrial {
  double eps = 0.0;
  std::array<RegionMin, 5> minima;
  bool pass = false;
};

struct EpsilonSearch {
  bool found = false;
  double eps = 0.0;  // the passing value when found
  std::vector<EpsilonTrial> trials;
};

inline constexpr double kRegionTolerance = -1e-12;

/// Walks a strictly decreasing ladder and stops at the first eps whose
/// five block minima are all >= -1e-12.
EpsilonSearch find_epsilon(const HandleProfile& p, std::span<const double> ladder,
                           int n_per_side = 128);

/// eps_k = ub / 2^k for k = 1..count with ub = (pi/2 - theta0 - eps1) / 2,
/// keeping only values below T that leave block E non-empty.
std::vector<double> default_epsilon_ladder(const HandleProfile& p, int count = 30);

// ---------------------------------------------------------------------------
// Scalar-curvature scans

struct ScanReport {
  int n_theta = 0;
  int n_t = 0;
  double theta_lo = 0.0;
  double theta_hi = 0.0;
  double t_lo = 0.0;
  double t_hi = 0.0;

  double min_s = 0.0;
  GridPoint argmin;
  bool positive = false;
  long evaluated = 0;
  long excluded_negative = 0;  // r < 0
  long excluded_floor = 0;     // 0 <= r <= r_floor (radius-one metric only)
  double r_floor = 0.0;

  // Parameter echo.
  ProfileVariant variant = ProfileVariant::ClassicR0;
  double R = 0.0;
  double half_width = 0.0;
  double theta0 = 0.0;
  double eps1 = 0.0;
  double r0_or_m = 0.0;

  /// Minimum of the variant's leading term over the evaluated points.
  double leading_min = 0.0;
  GridPoint leading_argmin;

  /// Row-major (theta index major) S and r values when requested; S is NaN
  /// at excluded points.
  std::vector<double> s_field;
  std::vector<double> r_field;
};

struct ScanOptions {
  int n_theta = 200;
  int n_t = 200;
  bool keep_field = false;
  /// 0 lets the scan pick std::thread::hardware_concurrency().
  unsigned threads = 0;
};

/// Closed-form S of the classic metric over [0, pi/2 - eps1/2] x [-2T, 2T]
/// at points with r >= 0. Rows run in parallel; the reduction is in row
/// order, so the report does not depend on the thread count.
ScanReport scan_scalar_curvature(const HandleProfile& p, double R, const ScanOptions& opt = {});

inline constexpr double kRadiusOneFloor = 1e-6;

/// Same scan for a radius-one profile with the radius-one metric, evaluated
/// where r > 1e-6 (its metric has 1/r entries).
ScanReport scan_radius_one(const HandleProfile& p, double R, const ScanOptions& opt = {});

/// Builds the radius-one profile (M, theta0, T, default eps1) and scans it.
ScanReport radius_one_scan(double M, double theta0, double T, double R,
                           std::shared_ptr<const SmoothStep> step, const ScanOptions& opt = {});

struct RadiusOneSearch {
  bool found = false;
  double big_m = 0.0;
  double R = 0.0;
  ScanReport report;  // scan at the returned pair, or the last one tried
  int tried = 0;
};

/// Tries M over `m_ladder` (outer) and R over `r_ladder` (inner) and
/// returns the first pair with a POSITIVE scan.
RadiusOneSearch radius_one_ladder_search(double theta0, double T,
                                         std::span<const double> m_ladder,
                                         std::span<const double> r_ladder,
                                         std::shared_ptr<const SmoothStep> step,
                                         const ScanOptions& opt = {});

struct MinRadius {
  double r_star = 0.0;
  double r_lo = 0.0;  // final bracket
  double r_hi = 0.0;
  int iterations = 0;
  ScanReport at_r_star;
  std::optional<ScanReport> at_lower;  // scan at the final non-positive end
};

/// Bisection on the grid-certified verdict to relative width 1e-3.
/// Requires R_lo < R_hi, both positive, and a POSITIVE scan at R_hi.
/// Returns R_lo itself when that scan is already POSITIVE.
MinRadius find_min_R(const HandleProfile& p, double R_lo, double R_hi,
                     const ScanOptions& opt = {}, double rel_width = 1e-3);

/// Rebuilds the profile with T = alpha * base_T and scans at R = alpha * base_R.
ScanReport alpha_scaled_scan(const HandleProfile& p, double alpha, double base_R, double base_T,
                             const ScanOptions& opt = {});

struct FiberRescale {
  double s_original = 0.0;
  double s_rescaled = 0.0;
};

/// Scalar curvature from the generic pipeline before and after multiplying
/// the (alpha, alpha) metric entry by c > 0.
FiberRescale fiber_rescale_invariance(const ChartPoint& pt, double R, const HandleProfile& p,
                                      double c, double fd_step = 1e-4);

}  // namespace handlepsc
