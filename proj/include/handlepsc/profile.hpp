#pragma once

#include <array>
#include <memory>
#include <optional>
#include <string>

#include "handlepsc/keyvalue.hpp"
#include "handlepsc/stepfn.hpp"

namespace handlepsc {

enum class ProfileVariant {
  ClassicR0,   // r = r0 - P(t) Q(theta)
  RadiusOneM,  // r = 1 - M P(t) Q(theta)
};

std::string to_string(ProfileVariant v);
ProfileVariant parse_variant(const std::string& text);

/// Value and first two derivatives of a one-variable factor.
struct StepJet {
  double value = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
};

/// One factor of the product P(t) Q(theta): either the shared smooth step
/// rescaled onto [lo, hi], or a constant (used for fault fixtures).
class StepFactor {
 public:
  static StepFactor ramp(std::shared_ptr<const SmoothStep> step, double lo,
                         double hi);
  static StepFactor constant(double c);
  /// s(u^power) with u the affine coordinate on [lo, hi]. Still a monotone
  /// step flat at both ends, but with an asymmetric derivative when
  /// power != 1.
  static StepFactor warped(std::shared_ptr<const SmoothStep> step, double lo,
                           double hi, double power);

  StepJet operator()(double x) const;
  double value(double x) const;

  double lo() const { return lo_; }
  double hi() const { return hi_; }
  bool is_constant() const { return !step_; }

 private:
  std::shared_ptr<const SmoothStep> step_;
  double lo_ = 0.0;
  double hi_ = 1.0;
  double power_ = 1.0;
  double constant_ = 0.0;
};

/// r and its partial derivatives up to order two. r is the squared radius
/// of the fiber circle.
struct ProfileJet {
  double r = 0.0;
  double r_theta = 0.0;
  double r_t = 0.0;
  double r_thetatheta = 0.0;
  double r_thetat = 0.0;
  double r_tt = 0.0;

  ProfileJet scaled(double k) const {
    return {k * r, k * r_theta, k * r_t, k * r_thetatheta, k * r_thetat, k * r_tt};
  }
};

/// The profile r(theta, t) = base - amplitude * P(t) Q(theta) where P is a
/// smoothed step on [-T, T] and Q a smoothed step on
/// [theta0 + eps1, pi/2 - eps1].
class HandleProfile {
 public:
  /// Validated construction. `r0_or_m` is r0 for ClassicR0 (0 < r0 < 1/2)
  /// and M for RadiusOneM (M >= 0). Requires T > 0, 0 < theta0 < pi/2 and
  /// 0 < eps1 < (pi/2 - theta0) / 50. Throws PreconditionError.
  static HandleProfile make(ProfileVariant variant, double r0_or_m, double T,
                            double theta0, double eps1,
                            std::shared_ptr<const SmoothStep> step);

  ProfileJet jet(double theta, double t) const;
  double value(double theta, double t) const;

  StepJet time_factor(double t) const { return p_(t); }
  StepJet theta_factor(double theta) const { return q_(theta); }

  ProfileVariant variant() const { return variant_; }
  double r0() const { return r0_; }
  double big_m() const { return big_m_; }
  double half_width() const { return half_width_; }
  double theta0() const { return theta0_; }
  double eps1() const { return eps1_; }
  const std::shared_ptr<const SmoothStep>& step() const { return step_; }

  /// r0 for ClassicR0, 1 for RadiusOneM.
  double base() const { return base_; }
  /// 1 for ClassicR0, M for RadiusOneM.
  double amplitude() const { return amplitude_; }
  /// Support of Q.
  double theta_lo() const { return theta0_ + eps1_; }
  double theta_hi() const;

  /// Same profile with a different half-width T (validated).
  HandleProfile with_half_width(double T) const;

  // Fault-fixture hooks. They bypass validation on purpose.
  HandleProfile with_base_unchecked(double base) const;
  HandleProfile with_theta_factor(StepFactor q) const;
  HandleProfile with_time_factor(StepFactor p) const;

 private:
  HandleProfile() = default;

  ProfileVariant variant_ = ProfileVariant::ClassicR0;
  double r0_ = 0.0;
  double big_m_ = 0.0;
  double half_width_ = 1.0;
  double theta0_ = 0.0;
  double eps1_ = 0.0;
  double base_ = 0.0;
  double amplitude_ = 1.0;
  std::shared_ptr<const SmoothStep> step_;
  StepFactor p_ = StepFactor::constant(0.0);
  StepFactor q_ = StepFactor::constant(0.0);
};

/// Uniform rectangular sample grid, endpoints included.
struct SampleGrid {
  double theta_lo = 0.0;
  double theta_hi = 1.0;
  double t_lo = 0.0;
  double t_hi = 1.0;
  int n_theta = 2;
  int n_t = 2;

  double theta(int i) const {
    return n_theta == 1 ? theta_lo
                        : theta_lo + (theta_hi - theta_lo) * i / (n_theta - 1);
  }
  double t(int j) const {
    return n_t == 1 ? t_lo : t_lo + (t_hi - t_lo) * j / (n_t - 1);
  }
  std::size_t size() const {
    return static_cast<std::size_t>(n_theta) * static_cast<std::size_t>(n_t);
  }
};

/// [0, pi/2] x [-2T, 2T] at the given resolution.
SampleGrid boundary_check_grid(const HandleProfile& p, int n_theta = 256,
                               int n_t = 256);

struct GridPoint {
  double theta = 0.0;
  double t = 0.0;
};

struct BoundaryItem {
  int index = 0;  // 1..6
  std::string description;
  bool pass = true;
  std::optional<GridPoint> witness;
};

/// Checks the six boundary conditions on r over `grid` (which must cover
/// [0, pi/2] x [-2T, 2T] with at least 100 x 100 points):
///   1. constant in t for t < -T and t > T
///   2. constant in t and theta for theta <= theta0 or t <= -T
///   3. constant in theta for theta >= pi/2 - eps1
///   4. r(pi/2, t) < 0 for t > T
///   5. non-increasing in theta and in t
///   6. r, r_theta, r_t never vanish together
std::array<BoundaryItem, 6> check_boundary_conditions(const HandleProfile& p,
                                                      const SampleGrid& grid);

/// Flat key-value description of a profile.
struct ProfileConfig {
  ProfileVariant variant = ProfileVariant::ClassicR0;
  double r0 = 0.25;
  double big_m = 4.0;
  double half_width = 10.0;
  double theta0 = 0.8;
  std::optional<double> eps1;  // default (pi/2 - theta0) / 100
  int quadrature_points = 1024;

  double eps1_or_default() const;
  HandleProfile build() const;
  /// Uses `step` as is; `quadrature_points` only matters for build().
  HandleProfile build(std::shared_ptr<const SmoothStep> step) const;

  /// Reads keys variant, r0, M, T, theta0, eps1, quadrature_points; absent
  /// keys keep their defaults. Other keys are ignored.
  static ProfileConfig from_key_values(const KeyValues& kv);
  void write_to(KeyValues& kv) const;
};

}  // namespace handlepsc
