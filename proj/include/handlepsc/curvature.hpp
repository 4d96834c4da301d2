#pragma once

#include <array>

#include "handlepsc/chart.hpp"
#include "handlepsc/metric.hpp"
#include "handlepsc/profile.hpp"

namespace handlepsc {

/// gamma[k](i, j) = Gamma^k_ij.
using ChristoffelSymbols = std::array<Mat4, 4>;

/// R^rho_{sigma mu nu}, or R_{rho sigma mu nu} once lowered.
class RiemannTensor {
 public:
  double& operator()(int rho, int sigma, int mu, int nu) {
    return v_[((rho * 4 + sigma) * 4 + mu) * 4 + nu];
  }
  double operator()(int rho, int sigma, int mu, int nu) const {
    return v_[((rho * 4 + sigma) * 4 + mu) * 4 + nu];
  }
  double max_abs() const;

 private:
  std::array<double, 256> v_{};
};

struct CurvatureBundle {
  Mat4 g;
  Mat4 g_inv;
  ChristoffelSymbols gamma;
  RiemannTensor riemann;
  Mat4 ricci;
  double scalar = 0.0;
  /// Largest |d_phi Gamma| or |d_alpha Gamma| seen while building Riemann.
  double angular_derivative = 0.0;
};

/// Gamma^k_ij = 1/2 g^km (d_j g_im + d_i g_jm - d_m g_ij).
ChristoffelSymbols christoffel(const MetricJet& jet);
ChristoffelSymbols christoffel(const MetricJet& jet, const Mat4& g_inv);

/// Ric_ij = sum_k R^k_ikj.
Mat4 ricci_from_riemann(const RiemannTensor& riem);

/// S = g^ij Ric_ij.
double scalar_from_ricci(const Mat4& g_inv, const Mat4& ric);

/// R_{rho sigma mu nu} = g_{rho lambda} R^lambda_{sigma mu nu}.
RiemannTensor lower_first_index(const RiemannTensor& riem, const Mat4& g);

/// Full pipeline at a point. Gamma is differentiated by central differences
/// in theta and t with steps fd_step and fd_step/2 combined by one
/// Richardson level. The phi and alpha derivatives are checked to vanish
/// (throws Error if they do not) and then dropped.
/// Throws PreconditionError for fd_step <= 0, ChartError when the stencil
/// leaves {r > 0}, SingularMetricError on a degenerate metric.
CurvatureBundle curvature_pipeline(const ChartPoint& pt, const ChartModel& model,
                                   const HandleProfile& p, double fd_step = 1e-4);

}  // namespace handlepsc
