#include "handlepsc/curvature.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

double max_abs(const ChristoffelSymbols& gamma) {
  double m = 0.0;
  for (const Mat4& k : gamma) m = std::max(m, k.cwiseAbs().maxCoeff());
  return m;
}

ChristoffelSymbols gamma_at(const ChartPoint& pt, const ChartModel& model,
                            const HandleProfile& p) {
  return christoffel(metric_jet(pt, model, p));
}

ChristoffelSymbols central_difference(const ChartPoint& pt, int c, double h,
                                      const ChartModel& model, const HandleProfile& p) {
  const ChristoffelSymbols plus = gamma_at(pt.shifted(c, h), model, p);
  const ChristoffelSymbols minus = gamma_at(pt.shifted(c, -h), model, p);
  ChristoffelSymbols d;
  for (int k = 0; k < 4; ++k) d[k] = (plus[k] - minus[k]) / (2.0 * h);
  return d;
}

}  // namespace

double RiemannTensor::max_abs() const {
  double m = 0.0;
  for (const double x : v_) m = std::max(m, std::abs(x));
  return m;
}

ChristoffelSymbols christoffel(const MetricJet& jet) {
  return christoffel(jet, metric_inverse(jet.g));
}

ChristoffelSymbols christoffel(const MetricJet& jet, const Mat4& g_inv) {
  // First-kind symbols [ij, m] = 1/2 (d_j g_im + d_i g_jm - d_m g_ij).
  std::array<Mat4, 4> first;
  for (int m = 0; m < 4; ++m) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) {
        first[m](i, j) = 0.5 * (jet.dg[j](i, m) + jet.dg[i](j, m) - jet.dg[m](i, j));
      }
    }
  }
  ChristoffelSymbols gamma;
  for (int k = 0; k < 4; ++k) {
    gamma[k].setZero();
    for (int m = 0; m < 4; ++m) gamma[k] += g_inv(k, m) * first[m];
    gamma[k] = 0.5 * (gamma[k] + gamma[k].transpose()).eval();
  }
  return gamma;
}

Mat4 ricci_from_riemann(const RiemannTensor& riem) {
  Mat4 ric = Mat4::Zero();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) ric(i, j) += riem(k, i, k, j);
    }
  }
  return ric;
}

double scalar_from_ricci(const Mat4& g_inv, const Mat4& ric) {
  return g_inv.cwiseProduct(ric).sum();
}

RiemannTensor lower_first_index(const RiemannTensor& riem, const Mat4& g) {
  RiemannTensor low;
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) {
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          double v = 0.0;
          for (int l = 0; l < 4; ++l) v += g(r, l) * riem(l, s, m, n);
          low(r, s, m, n) = v;
        }
      }
    }
  }
  return low;
}

CurvatureBundle curvature_pipeline(const ChartPoint& pt, const ChartModel& model,
                                   const HandleProfile& p, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw PreconditionError("curvature_pipeline: fd_step must be positive");
  }
  CurvatureBundle b;
  const MetricJet jet = metric_jet(pt, model, p);
  b.g = jet.g;
  b.g_inv = metric_inverse(jet.g);
  b.gamma = christoffel(jet, b.g_inv);

  // dgamma[c][k](i, j) = d_c Gamma^k_ij.
  std::array<ChristoffelSymbols, 4> dgamma;
  for (const int c : {kTheta, kTime}) {
    const ChristoffelSymbols coarse = central_difference(pt, c, fd_step, model, p);
    const ChristoffelSymbols fine = central_difference(pt, c, fd_step / 2.0, model, p);
    for (int k = 0; k < 4; ++k) dgamma[c][k] = (4.0 * fine[k] - coarse[k]) / 3.0;
  }
  const double scale = 1.0 + max_abs(b.gamma);
  for (const int c : {kPhi, kAlpha}) {
    b.angular_derivative = std::max(
        b.angular_derivative, max_abs(central_difference(pt, c, fd_step, model, p)));
    for (int k = 0; k < 4; ++k) dgamma[c][k].setZero();
  }
  if (b.angular_derivative > 1e-8 * scale) {
    throw Error("curvature_pipeline: Christoffel field depends on phi or alpha (|d| = " +
                std::to_string(b.angular_derivative) + ")");
  }

  const ChristoffelSymbols& G = b.gamma;
  for (int r = 0; r < 4; ++r) {
    for (int s = 0; s < 4; ++s) {
      for (int m = 0; m < 4; ++m) {
        for (int n = 0; n < 4; ++n) {
          double v = dgamma[m][r](n, s) - dgamma[n][r](m, s);
          for (int l = 0; l < 4; ++l) v += G[r](m, l) * G[l](n, s) - G[r](n, l) * G[l](m, s);
          b.riemann(r, s, m, n) = v;
        }
      }
    }
  }
  b.ricci = ricci_from_riemann(b.riemann);
  b.scalar = scalar_from_ricci(b.g_inv, b.ricci);
  return b;
}

}  // namespace handlepsc
