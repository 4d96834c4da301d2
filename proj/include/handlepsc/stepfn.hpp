#pragma once

#include <span>
#include <vector>

namespace handlepsc {

/// Unnormalized bump integral  int_a^b exp(-1/y - 1/(1-y)) dy  with [a, b]
/// clipped to [0, 1]. Throws QuadratureError on a non-finite sample.
double bump_integral(double a, double b);

/// Smoothed step s(x) = C * int_0^x exp(-1/y - 1/(1-y)) dy on [0, 1],
/// normalized so that s(1) = 1.
///
/// The cumulative integral is tabulated once on a uniform grid. A value
/// lookup adds the exact integral from the nearest tabulated node below x,
/// so the result keeps full relative accuracy even in the flat tails where
/// s(x) is ~1e-50. Values above 1/2 are taken from the mirror identity
/// s(x) = 1 - s(1 - x). Derivatives never touch the table.
///
/// Immutable after construction.
class SmoothStep {
 public:
  /// Builds the table with `quadrature_points` intervals (>= 64).
  static SmoothStep build(int quadrature_points);

  /// order 0: value; orders 1-3: exact derivatives of the closed-form
  /// integrand. Outside [0, 1] the value clamps to 0 / 1 and every
  /// derivative is 0.
  double eval(double x, int order = 0) const;

  double value(double x) const { return eval(x, 0); }

  /// C such that s(1) = 1.
  double normalization() const { return normalization_; }

  int intervals() const { return static_cast<int>(nodes_.size()) - 1; }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> values() const { return values_; }

 private:
  SmoothStep() = default;

  double value_lower_half(double x) const;

  double normalization_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> values_;
};

/// Ladder evidence that s(x) / (s'(x) x^2) and s'(x) / (s''(x) x^2) have
/// positive finite limits as x -> 0.
struct RatioReport {
  std::vector<double> ladder;
  std::vector<double> value_ratio;  // s / (s' x^2)
  std::vector<double> slope_ratio;  // s' / (s'' x^2)
  bool pass = false;
};

/// `ladder` must be strictly decreasing, have at least 6 entries and lie at
/// or below 1/4. Throws DivisionBlowUp when s' or s'' vanishes at a ladder
/// point (ladder reaches into the flat tail, or touches 0).
RatioReport check_limit_ratios(const SmoothStep& step,
                               std::span<const double> ladder);

}  // namespace handlepsc
