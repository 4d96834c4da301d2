#include "handlepsc/stepfn.hpp"

#include <algorithm>
#include <array>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

constexpr int kGaussOrder = 20;

// exp() of anything below this is subnormal or zero.
const double kMinExponent = std::log(DBL_MIN);

struct GaussRule {
  std::array<double, kGaussOrder> nodes{};
  std::array<double, kGaussOrder> weights{};
};

// Gauss-Legendre on [-1, 1] via Newton iteration on P_n.
GaussRule make_gauss_rule() {
  GaussRule rule;
  constexpr int n = kGaussOrder;
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0;
      double p1 = 0.0;
      for (int k = 1; k <= n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p2) / k;
      }
      dp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / dp;
      z -= dz;
      if (std::abs(dz) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * dp * dp);
    rule.nodes[i] = -z;
    rule.nodes[n - 1 - i] = z;
    rule.weights[i] = w;
    rule.weights[n - 1 - i] = w;
  }
  return rule;
}

const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

double bump_exponent(double y) { return -1.0 / y - 1.0 / (1.0 - y); }

double bump(double y) {
  if (!(y > 0.0 && y < 1.0)) return 0.0;
  const double e = bump_exponent(y);
  return e < kMinExponent ? 0.0 : std::exp(e);
}

double gauss(double a, double b) {
  const GaussRule& rule = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (int i = 0; i < kGaussOrder; ++i) {
    const double f = bump(mid + half * rule.nodes[i]);
    if (!std::isfinite(f)) {
      throw QuadratureError("non-finite bump integrand sample near y = " +
                            std::to_string(mid + half * rule.nodes[i]));
    }
    sum += rule.weights[i] * f;
  }
  return half * sum;
}

// Largest |d/dy exponent| on [a, b]; the exponent is convex so it is
// attained at an endpoint.
double exponent_rate(double a, double b) {
  auto rate = [](double y) {
    if (y <= 0.0 || y >= 1.0) return HUGE_VAL;
    return std::abs(1.0 / (y * y) - 1.0 / ((1.0 - y) * (1.0 - y)));
  };
  return std::max(rate(a), rate(b));
}

double integrate_piece(double a, double b, int depth) {
  if (b <= a) return 0.0;
  // Entirely inside an underflow tail.
  if (b <= 0.5 && (b <= 0.0 || bump_exponent(b) < kMinExponent - 40.0)) {
    return 0.0;
  }
  if (a >= 0.5 && (a >= 1.0 || bump_exponent(a) < kMinExponent - 40.0)) {
    return 0.0;
  }
  // A 20-point rule is exact to rounding while the integrand changes by
  // at most e^8 across the piece.
  if ((b - a) * exponent_rate(a, b) <= 8.0 || depth > 60) return gauss(a, b);
  const double mid = 0.5 * (a + b);
  return integrate_piece(a, mid, depth + 1) + integrate_piece(mid, b, depth + 1);
}

}  // namespace

double bump_integral(double a, double b) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw QuadratureError("bump_integral: non-finite interval endpoint");
  }
  const double lo = std::clamp(a, 0.0, 1.0);
  const double hi = std::clamp(b, 0.0, 1.0);
  if (hi < lo) return -integrate_piece(hi, lo, 0);
  return integrate_piece(lo, hi, 0);
}

SmoothStep SmoothStep::build(int quadrature_points) {
  if (quadrature_points < 64) {
    throw PreconditionError("build_step: quadrature_points must be >= 64, got " +
                            std::to_string(quadrature_points));
  }
  const int n = quadrature_points;
  SmoothStep step;
  step.nodes_.resize(n + 1);
  step.values_.resize(n + 1);
  for (int i = 0; i <= n; ++i) step.nodes_[i] = static_cast<double>(i) / n;

  // Neumaier-compensated running sum.
  double sum = 0.0;
  double carry = 0.0;
  step.values_[0] = 0.0;
  for (int i = 0; i < n; ++i) {
    const double piece = bump_integral(step.nodes_[i], step.nodes_[i + 1]);
    const double t = sum + piece;
    if (std::abs(sum) >= std::abs(piece)) {
      carry += (sum - t) + piece;
    } else {
      carry += (piece - t) + sum;
    }
    sum = t;
    step.values_[i + 1] = sum + carry;
  }
  const double total = step.values_[n];
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw QuadratureError("build_step: bump integral is not a positive number");
  }
  step.normalization_ = 1.0 / total;
  for (double& v : step.values_) v /= total;
  step.values_[n] = 1.0;
  return step;
}

double SmoothStep::value_lower_half(double x) const {
  const int n = intervals();
  int i = static_cast<int>(x * n);
  i = std::clamp(i, 0, n - 1);
  return values_[i] + normalization_ * bump_integral(nodes_[i], x);
}

double SmoothStep::eval(double x, int order) const {
  if (order == 0) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    if (x > 0.5) return 1.0 - value_lower_half(1.0 - x);
    return value_lower_half(x);
  }
  if (order < 0 || order > 3) {
    throw PreconditionError("eval_step: order must be 0..3");
  }
  if (!(x > 0.0 && x < 1.0)) return 0.0;
  const double e = bump_exponent(x);
  if (e < kMinExponent) return 0.0;
  const double f = normalization_ * std::exp(e);
  if (order == 1) return f;
  const double u = 1.0 - x;
  const double de = 1.0 / (x * x) - 1.0 / (u * u);
  if (order == 2) return f * de;
  const double dde = -2.0 / (x * x * x) - 2.0 / (u * u * u);
  return f * (de * de + dde);
}

RatioReport check_limit_ratios(const SmoothStep& step,
                               std::span<const double> ladder) {
  if (ladder.size() < 6) {
    throw PreconditionError("check_limit_ratios: ladder needs at least 6 points");
  }
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] <= 0.25)) {
      throw PreconditionError("check_limit_ratios: ladder points must be <= 1/4");
    }
    if (i > 0 && !(ladder[i] < ladder[i - 1])) {
      throw PreconditionError("check_limit_ratios: ladder must strictly decrease");
    }
  }

  RatioReport report;
  report.ladder.assign(ladder.begin(), ladder.end());
  for (const double x : ladder) {
    const double s0 = step.eval(x, 0);
    const double s1 = step.eval(x, 1);
    const double s2 = step.eval(x, 2);
    if (s1 == 0.0 || s2 == 0.0) {
      throw DivisionBlowUp("check_limit_ratios: derivative underflows at x = " +
                           std::to_string(x) + "; shorten the ladder");
    }
    report.value_ratio.push_back(s0 / (s1 * x * x));
    report.slope_ratio.push_back(s1 / (s2 * x * x));
  }

  auto converging = [](const std::vector<double>& seq) {
    for (const double v : seq) {
      if (!(v > 0.0) || !std::isfinite(v)) return false;
    }
    for (std::size_t k = 2; k < seq.size(); ++k) {
      if (!(std::abs(seq[k] - seq[k - 1]) < std::abs(seq[k - 1] - seq[k - 2]))) {
        return false;
      }
    }
    return true;
  };
  report.pass = converging(report.value_ratio) && converging(report.slope_ratio);
  return report;
}

}  // namespace handlepsc
