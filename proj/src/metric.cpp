#include "handlepsc/metric.hpp"

#include <cmath>

#include "handlepsc/embedding.hpp"
#include "handlepsc/errors.hpp"

namespace handlepsc {

MetricJet metric_jet(const ChartPoint& pt, const ChartModel& model, const HandleProfile& p) {
  const EmbeddingJet e = embedding_jet(pt, model, p);
  MetricJet m;
  for (int a = 0; a < 4; ++a) {
    for (int b = a; b < 4; ++b) {
      m.g(a, b) = m.g(b, a) = e.d[a].dot(e.d[b]);
    }
  }
  for (int c = 0; c < 4; ++c) {
    for (int a = 0; a < 4; ++a) {
      for (int b = a; b < 4; ++b) {
        m.dg[c](a, b) = m.dg[c](b, a) = e.dd[a][c].dot(e.d[b]) + e.d[a].dot(e.dd[b][c]);
      }
    }
  }
  return m;
}

Mat4 metric_inverse(const Mat4& g) {
  const Eigen::LDLT<Mat4> ldlt(g);
  if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
    throw SingularMetricError("metric is not positive definite");
  }
  const auto d = ldlt.vectorD();
  const double dmax = d.cwiseAbs().maxCoeff();
  if (!(d.minCoeff() > 1e-14 * dmax)) {
    throw SingularMetricError("metric is numerically singular");
  }
  return ldlt.solve(Mat4::Identity());
}

}  // namespace handlepsc
