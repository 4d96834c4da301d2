#include "handlepsc/embedding.hpp"

#include <cmath>
#include <string>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

void require_inside(double r, const ChartPoint& pt) {
  if (!(r > 0.0)) {
    throw ChartError("point (theta=" + std::to_string(pt.theta) +
                     ", t=" + std::to_string(pt.t) + ") has r = " + std::to_string(r) +
                     " <= 0, outside the chart");
  }
}

}  // namespace

Vec6 embed_point(const ChartPoint& pt, const ChartModel& model, const HandleProfile& p) {
  const double r = p.value(pt.theta, pt.t);
  require_inside(r, pt);
  const double rho = model.sphere_radius();
  const double f = std::sqrt(r / model.fiber_divisor());
  const double la = model.fiber_speed() * pt.alpha;
  Vec6 x;
  x << rho * std::cos(pt.theta) * std::cos(pt.phi), rho * std::cos(pt.theta) * std::sin(pt.phi),
      rho * std::sin(pt.theta), f * std::cos(la), f * std::sin(la), pt.t;
  return x;
}

Vec6 embed_point(const ChartPoint& pt, double R, const HandleProfile& p) {
  return embed_point(pt, ChartModel::classic(R), p);
}

EmbeddingJet embedding_jet(const ChartPoint& pt, const ChartModel& model,
                           const HandleProfile& p) {
  const ProfileJet j = p.jet(pt.theta, pt.t).scaled(1.0 / model.fiber_divisor());
  require_inside(j.r, pt);

  // f = sqrt(r) and its partials in (theta, t).
  const double f = std::sqrt(j.r);
  const double f_th = j.r_theta / (2.0 * f);
  const double f_t = j.r_t / (2.0 * f);
  const double f3 = 4.0 * f * f * f;
  const double f_thth = j.r_thetatheta / (2.0 * f) - j.r_theta * j.r_theta / f3;
  const double f_tht = j.r_thetat / (2.0 * f) - j.r_theta * j.r_t / f3;
  const double f_tt = j.r_tt / (2.0 * f) - j.r_t * j.r_t / f3;

  const double rho = model.sphere_radius();
  const double lam = model.fiber_speed();
  const double ct = std::cos(pt.theta), st = std::sin(pt.theta);
  const double cp = std::cos(pt.phi), sp = std::sin(pt.phi);
  const double ca = std::cos(lam * pt.alpha), sa = std::sin(lam * pt.alpha);

  EmbeddingJet e;
  e.x << rho * ct * cp, rho * ct * sp, rho * st, f * ca, f * sa, pt.t;
  for (auto& v : e.d) v.setZero();
  for (auto& row : e.dd) {
    for (auto& v : row) v.setZero();
  }

  e.d[kTheta] << -rho * st * cp, -rho * st * sp, rho * ct, f_th * ca, f_th * sa, 0.0;
  e.d[kPhi] << -rho * ct * sp, rho * ct * cp, 0.0, 0.0, 0.0, 0.0;
  e.d[kTime] << 0.0, 0.0, 0.0, f_t * ca, f_t * sa, 1.0;
  e.d[kAlpha] << 0.0, 0.0, 0.0, -lam * f * sa, lam * f * ca, 0.0;

  auto set_sym = [&](int a, int b, const Vec6& v) {
    e.dd[a][b] = v;
    e.dd[b][a] = v;
  };
  Vec6 v;
  v << -rho * ct * cp, -rho * ct * sp, -rho * st, f_thth * ca, f_thth * sa, 0.0;
  set_sym(kTheta, kTheta, v);
  v << rho * st * sp, -rho * st * cp, 0.0, 0.0, 0.0, 0.0;
  set_sym(kTheta, kPhi, v);
  v << 0.0, 0.0, 0.0, f_tht * ca, f_tht * sa, 0.0;
  set_sym(kTheta, kTime, v);
  v << 0.0, 0.0, 0.0, -lam * f_th * sa, lam * f_th * ca, 0.0;
  set_sym(kTheta, kAlpha, v);
  v << -rho * ct * cp, -rho * ct * sp, 0.0, 0.0, 0.0, 0.0;
  set_sym(kPhi, kPhi, v);
  v << 0.0, 0.0, 0.0, f_tt * ca, f_tt * sa, 0.0;
  set_sym(kTime, kTime, v);
  v << 0.0, 0.0, 0.0, -lam * f_t * sa, lam * f_t * ca, 0.0;
  set_sym(kTime, kAlpha, v);
  v << 0.0, 0.0, 0.0, -lam * lam * f * ca, -lam * lam * f * sa, 0.0;
  set_sym(kAlpha, kAlpha, v);
  return e;
}

Mat4 induced_metric_oracle(const ChartPoint& pt, const ChartModel& model,
                           const HandleProfile& p, double fd_step) {
  if (!(fd_step > 0.0)) {
    throw PreconditionError("induced_metric_oracle: fd_step must be positive");
  }
  auto tangent = [&](int a, double h) -> Vec6 {
    const Vec6 plus = embed_point(pt.shifted(a, h), model, p);
    const Vec6 minus = embed_point(pt.shifted(a, -h), model, p);
    return (plus - minus) / (2.0 * h);
  };
  std::array<Vec6, 4> d;
  for (int a = 0; a < 4; ++a) {
    d[a] = (4.0 * tangent(a, fd_step / 2.0) - tangent(a, fd_step)) / 3.0;
  }
  Mat4 g;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) g(a, b) = d[a].dot(d[b]);
  }
  return g;
}

DhRank dh_rank_check(const Vec6& x, double r_theta, double r_t, double R,
                     double threshold) {
  const double rho_xy = std::hypot(x(0), x(1));
  DhRank out;
  out.dh.setZero();
  out.dh.row(0) << 2.0 * x(0), 2.0 * x(1), 2.0 * x(2), 0.0, 0.0, 0.0;
  const double k = r_theta / (R * R);
  // x z / sqrt(x^2 + y^2) written as z cos(phi) to stay finite on the axis.
  const double c = rho_xy > 0.0 ? x(0) / rho_xy : 1.0;
  const double s = rho_xy > 0.0 ? x(1) / rho_xy : 0.0;
  out.dh.row(1) << k * x(2) * c, k * x(2) * s, -k * rho_xy, 2.0 * x(3), 2.0 * x(4), -r_t;

  Eigen::JacobiSVD<Eigen::Matrix<double, 2, 6>> svd(out.dh);
  const auto sv = svd.singularValues();
  out.sigma_max = sv(0);
  out.sigma_min = sv(1);
  out.full_rank = out.sigma_min > threshold;
  return out;
}

DhRank dh_rank_check(const ChartPoint& pt, double R, const HandleProfile& p,
                     double threshold) {
  const ProfileJet j = p.jet(pt.theta, pt.t);
  if (j.r < 0.0) {
    throw ChartError("dh_rank_check: r < 0, point is not on X");
  }
  const double f = std::sqrt(j.r);
  Vec6 x;
  x << R * std::cos(pt.theta) * std::cos(pt.phi), R * std::cos(pt.theta) * std::sin(pt.phi),
      R * std::sin(pt.theta), f * std::cos(pt.alpha), f * std::sin(pt.alpha), pt.t;
  return dh_rank_check(x, j.r_theta, j.r_t, R, threshold);
}

}  // namespace handlepsc
