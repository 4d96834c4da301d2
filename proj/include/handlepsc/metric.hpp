#pragma once

#include <array>

#include "handlepsc/chart.hpp"
#include "handlepsc/profile.hpp"

namespace handlepsc {

/// Induced metric at a point with its first partials, dg[c](a, b) = d_c g_ab.
/// Second partials are not stored: the curvature pipeline differentiates
/// the Christoffel field instead.
struct MetricJet {
  Mat4 g;
  std::array<Mat4, 4> dg;
};

/// Analytic metric and partials from the embedding jet.
MetricJet metric_jet(const ChartPoint& pt, const ChartModel& model, const HandleProfile& p);

/// Numeric inverse via LDLT. Throws SingularMetricError unless g is
/// positive definite with a reasonable condition.
Mat4 metric_inverse(const Mat4& g);

}  // namespace handlepsc
