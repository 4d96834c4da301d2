#pragma once

#include <array>

#include "handlepsc/chart.hpp"
#include "handlepsc/profile.hpp"

namespace handlepsc {

/// Position in R^6. Throws ChartError when r(theta, t) <= 0.
Vec6 embed_point(const ChartPoint& pt, const ChartModel& model, const HandleProfile& p);
Vec6 embed_point(const ChartPoint& pt, double R, const HandleProfile& p);

/// Position with analytic first and second coordinate derivatives.
struct EmbeddingJet {
  Vec6 x;
  std::array<Vec6, 4> d;                  // d[a] = dX / dx^a
  std::array<std::array<Vec6, 4>, 4> dd;  // dd[a][b] = d2X / dx^a dx^b
};

EmbeddingJet embedding_jet(const ChartPoint& pt, const ChartModel& model,
                           const HandleProfile& p);

/// g_ab = dX/dx^a . dX/dx^b with central-difference tangent vectors of
/// embed_point and one Richardson level (steps h and h/2).
/// Throws PreconditionError for fd_step <= 0 and ChartError if the stencil
/// leaves {r > 0}.
Mat4 induced_metric_oracle(const ChartPoint& pt, const ChartModel& model,
                           const HandleProfile& p, double fd_step = 1e-4);

/// Jacobian of h(x,y,z,u,w,t) = (x^2+y^2+z^2-R^2, u^2+w^2-r) at a point of
/// X, in the closed form written with r_theta and r_t.
struct DhRank {
  Eigen::Matrix<double, 2, 6> dh;
  double sigma_min = 0.0;
  double sigma_max = 0.0;
  bool full_rank = false;
};

inline constexpr double kDhRankThreshold = 1e-6;

/// From a chart point with r >= 0 on the classic embedding of radius R.
DhRank dh_rank_check(const ChartPoint& pt, double R, const HandleProfile& p,
                     double threshold = kDhRankThreshold);

/// From raw ambient coordinates and the profile slopes there. Lets callers
/// build points no valid profile produces.
DhRank dh_rank_check(const Vec6& x, double r_theta, double r_t, double R,
                     double threshold = kDhRankThreshold);

}  // namespace handlepsc
