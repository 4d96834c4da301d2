#pragma once

#include <array>

#include <Eigen/Dense>

namespace handlepsc {

/// Coordinate slots of the chart (theta, phi, t, alpha).
enum Coord : int { kTheta = 0, kPhi = 1, kTime = 2, kAlpha = 3 };

inline constexpr std::array<const char*, 4> kCoordNames = {"theta", "phi", "t", "alpha"};

struct ChartPoint {
  double theta = 0.0;
  double phi = 0.0;
  double t = 0.0;
  double alpha = 0.0;

  double operator[](int c) const {
    return c == kTheta ? theta : c == kPhi ? phi : c == kTime ? t : alpha;
  }
  ChartPoint shifted(int c, double h) const {
    ChartPoint p = *this;
    (c == kTheta ? p.theta : c == kPhi ? p.phi : c == kTime ? p.t : p.alpha) += h;
    return p;
  }
};

/// The embedding family
///   (rho cos th cos ph, rho cos th sin ph, rho sin th,
///    f cos(lambda a), f sin(lambda a), t),   f = sqrt(r / kappa).
///
/// classic(R) is rho = R, kappa = 1, lambda = 1. radius_one(R) is the
/// unit-sphere repackaging rho = 1, kappa = R^2, lambda = R. A fiber scale
/// c multiplies the (alpha, alpha) metric entry by c.
struct ChartModel {
  enum class Kind { Classic, RadiusOne };

  Kind kind = Kind::Classic;
  double big_r = 1.0;
  double fiber_scale = 1.0;

  static ChartModel classic(double R);
  static ChartModel radius_one(double R);
  ChartModel with_fiber_scale(double c) const;

  double sphere_radius() const { return kind == Kind::Classic ? big_r : 1.0; }
  double fiber_divisor() const { return kind == Kind::Classic ? 1.0 : big_r * big_r; }
  double fiber_speed() const;
};

using Mat4 = Eigen::Matrix4d;
using Vec6 = Eigen::Matrix<double, 6, 1>;

}  // namespace handlepsc
