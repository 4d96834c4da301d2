#include "handlepsc/psc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <thread>

#include "handlepsc/closed_form.hpp"
#include "handlepsc/curvature.hpp"
#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double lerp(double lo, double hi, int i, int n) {
  return n == 1 ? lo : lo + (hi - lo) * i / (n - 1);
}

// Runs body(row) for row in [0, rows) on up to `threads` workers.
void parallel_rows(int rows, unsigned threads, const std::function<void(int)>& body) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max(rows, 1)));
  if (threads <= 1) {
    for (int i = 0; i < rows; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (unsigned w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < rows; i = next++) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

struct PointValue {
  bool below_floor = false;
  double s = 0.0;
  double lead = 0.0;
};

using PointEval = std::function<PointValue(const ProfileJet&, double theta)>;

struct RowResult {
  double min_s = HUGE_VAL;
  GridPoint argmin;
  double min_lead = HUGE_VAL;
  GridPoint lead_argmin;
  long evaluated = 0;
  long negative = 0;
  long floor = 0;
};

ScanReport run_scan(const HandleProfile& p, double R, const ScanOptions& opt, double r_floor,
                    const PointEval& eval) {
  if (opt.n_theta < 2 || opt.n_t < 2) {
    throw PreconditionError("scan: grid must be at least 2 x 2, got " +
                            std::to_string(opt.n_theta) + "x" + std::to_string(opt.n_t));
  }
  if (!(R > 0.0)) throw PreconditionError("scan: R must be positive");
  const double T = p.half_width();
  ScanReport rep;
  rep.n_theta = opt.n_theta;
  rep.n_t = opt.n_t;
  rep.theta_lo = 0.0;
  rep.theta_hi = kHalfPi - 0.5 * p.eps1();
  rep.t_lo = -2.0 * T;
  rep.t_hi = 2.0 * T;
  rep.r_floor = r_floor;
  rep.variant = p.variant();
  rep.R = R;
  rep.half_width = T;
  rep.theta0 = p.theta0();
  rep.eps1 = p.eps1();
  rep.r0_or_m = p.variant() == ProfileVariant::ClassicR0 ? p.r0() : p.big_m();

  const std::size_t total = static_cast<std::size_t>(opt.n_theta) * opt.n_t;
  if (opt.keep_field) {
    rep.s_field.assign(total, kNaN);
    rep.r_field.assign(total, kNaN);
  }
  std::vector<RowResult> rows(static_cast<std::size_t>(opt.n_theta));

  parallel_rows(opt.n_theta, opt.threads, [&](int i) {
    RowResult& row = rows[static_cast<std::size_t>(i)];
    const double theta = lerp(rep.theta_lo, rep.theta_hi, i, opt.n_theta);
    for (int j = 0; j < opt.n_t; ++j) {
      const double t = lerp(rep.t_lo, rep.t_hi, j, opt.n_t);
      const ProfileJet jet = p.jet(theta, t);
      const std::size_t k = static_cast<std::size_t>(i) * opt.n_t + j;
      if (opt.keep_field) rep.r_field[k] = jet.r;
      if (jet.r < 0.0) {
        ++row.negative;
        continue;
      }
      const PointValue v = eval(jet, theta);
      if (v.below_floor) {
        ++row.floor;
        continue;
      }
      ++row.evaluated;
      if (opt.keep_field) rep.s_field[k] = v.s;
      // A NaN S ranks below every number so it can never certify positivity.
      const double s = std::isnan(v.s) ? -HUGE_VAL : v.s;
      if (s < row.min_s) {
        row.min_s = s;
        row.argmin = {theta, t};
      }
      if (v.lead < row.min_lead) {
        row.min_lead = v.lead;
        row.lead_argmin = {theta, t};
      }
    }
  });

  rep.min_s = HUGE_VAL;
  rep.leading_min = HUGE_VAL;
  for (const RowResult& row : rows) {
    rep.evaluated += row.evaluated;
    rep.excluded_negative += row.negative;
    rep.excluded_floor += row.floor;
    if (row.evaluated == 0) continue;
    if (row.min_s < rep.min_s) {
      rep.min_s = row.min_s;
      rep.argmin = row.argmin;
    }
    if (row.min_lead < rep.leading_min) {
      rep.leading_min = row.min_lead;
      rep.leading_argmin = row.lead_argmin;
    }
  }
  rep.positive = rep.evaluated > 0 && rep.min_s > 0.0;
  return rep;
}

}  // namespace

double leading_term_N(const HandleProfile& p, double theta, double t, double R) {
  return closed_form::leading_term_classic(p.jet(theta, t), theta, R);
}

LeadingTermScan scan_leading_term(const HandleProfile& p, double R, int n_theta, int n_t) {
  if (n_theta < 2 || n_t < 2) throw PreconditionError("scan_leading_term: grid too small");
  const double T = p.half_width();
  LeadingTermScan out;
  out.min_value = HUGE_VAL;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = lerp(p.theta0(), p.theta_hi(), i, n_theta);
    for (int j = 0; j < n_t; ++j) {
      const double t = lerp(-T, T, j, n_t);
      const ProfileJet jet = p.jet(theta, t);
      if (jet.r < 0.0) continue;
      ++out.evaluated;
      const double n = closed_form::leading_term_classic(jet, theta, R);
      if (n < out.min_value) {
        out.min_value = n;
        out.argmin = {theta, t};
      }
    }
  }
  return out;
}

bool RegionPartition::in_target(double theta, double t) const {
  const double a = theta0 + eps1;
  if (theta < a || theta > kHalfPi - eps1 || t < -half_width || t > half_width) return false;
  return theta <= a + eps || t <= -half_width + eps;
}

RegionPartition region_partition(double theta0, double eps1, double eps, double T) {
  if (!(theta0 > 0.0 && theta0 < kHalfPi)) {
    throw PreconditionError("region_partition: theta0 must lie in (0, pi/2)");
  }
  if (!(eps1 > 0.0) || !(T > 0.0)) {
    throw PreconditionError("region_partition: eps1 and T must be positive");
  }
  const double bound = (kHalfPi - theta0 - eps1) / 2.0;
  if (!(eps > 0.0 && eps < bound)) {
    throw PreconditionError("region_partition: eps must lie in (0, (pi/2 - theta0 - eps1)/2)");
  }
  if (!(eps < T)) throw PreconditionError("region_partition: eps must be smaller than T");

  RegionPartition rp;
  rp.theta0 = theta0;
  rp.eps1 = eps1;
  rp.eps = eps;
  rp.half_width = T;
  rp.theta_split = (3.0 * theta0 + kHalfPi) / 4.0;
  const double a = theta0 + eps1;
  const double top = kHalfPi - eps1;
  const double split = rp.theta_split;
  rp.blocks[0] = {a, a + eps, 0.0, T};                                // A
  rp.blocks[1] = {std::max(split, a + eps), top, -T, -T + eps};       // B
  rp.blocks[2] = {a, a + eps, -T + eps, 0.0};                         // C
  rp.blocks[3] = {a, a + eps, -T, -T + eps};                          // D
  rp.blocks[4] = {a + eps, std::max(split, a + eps), -T, -T + eps};   // E
  return rp;
}

double region_lhs(const HandleProfile& p, double theta, double t) {
  const StepJet P = p.time_factor(t);
  const StepJet Q = p.theta_factor(theta);
  const double tan_term = Q.d1 == 0.0 ? 0.0 : Q.d1 * P.value * std::tan(theta);
  return Q.value * P.d2 + Q.d2 * P.value - tan_term;
}

RegionMin region_inequality_min(const HandleProfile& p, const Rect& block, int n_theta,
                                int n_t) {
  if (n_theta < 128 || n_t < 128) {
    throw PreconditionError("region_inequality_min: grid needs >= 128 points per side");
  }
  RegionMin out;
  if (block.degenerate()) return out;
  out.evaluated = true;
  out.value = HUGE_VAL;
  for (int i = 0; i < n_theta; ++i) {
    const double theta = lerp(block.theta_lo, block.theta_hi, i, n_theta);
    for (int j = 0; j < n_t; ++j) {
      const double t = lerp(block.t_lo, block.t_hi, j, n_t);
      const double v = region_lhs(p, theta, t);
      if (v < out.value || std::isnan(v)) {
        out.value = v;
        out.argmin = {theta, t};
        if (std::isnan(v)) return out;
      }
    }
  }
  return out;
}

std::vector<double> default_epsilon_ladder(const HandleProfile& p, int count) {
  const double ub = (kHalfPi - p.theta0() - p.eps1()) / 2.0;
  const double e_width = (3.0 * p.theta0() + kHalfPi) / 4.0 - (p.theta0() + p.eps1());
  std::vector<double> ladder;
  double eps = ub;
  for (int k = 1; k <= count; ++k) {
    eps /= 2.0;
    if (eps < p.half_width() && eps < e_width) ladder.push_back(eps);
  }
  return ladder;
}

EpsilonSearch find_epsilon(const HandleProfile& p, std::span<const double> ladder,
                           int n_per_side) {
  if (ladder.empty()) throw PreconditionError("find_epsilon: empty ladder");
  for (std::size_t i = 1; i < ladder.size(); ++i) {
    if (!(ladder[i] < ladder[i - 1])) {
      throw PreconditionError("find_epsilon: ladder must strictly decrease");
    }
  }
  EpsilonSearch out;
  for (const double eps : ladder) {
    const RegionPartition rp = region_partition(p.theta0(), p.eps1(), eps, p.half_width());
    EpsilonTrial trial;
    trial.eps = eps;
    trial.pass = true;
    for (int b = 0; b < 5; ++b) {
      trial.minima[b] = region_inequality_min(p, rp.blocks[b], n_per_side, n_per_side);
      if (trial.minima[b].evaluated && !(trial.minima[b].value >= kRegionTolerance)) {
        trial.pass = false;
      }
    }
    out.trials.push_back(trial);
    if (trial.pass) {
      out.found = true;
      out.eps = eps;
      break;
    }
  }
  return out;
}

ScanReport scan_scalar_curvature(const HandleProfile& p, double R, const ScanOptions& opt) {
  return run_scan(p, R, opt, 0.0, [R](const ProfileJet& j, double theta) {
    PointValue v;
    v.s = closed_form::scalar_classic(j, theta, R);
    v.lead = closed_form::leading_term_classic(j, theta, R);
    return v;
  });
}

ScanReport scan_radius_one(const HandleProfile& p, double R, const ScanOptions& opt) {
  return run_scan(p, R, opt, kRadiusOneFloor, [R](const ProfileJet& j, double theta) {
    PointValue v;
    if (!(j.r > kRadiusOneFloor)) {
      v.below_floor = true;
      return v;
    }
    v.s = closed_form::scalar_radius_one(j, theta, R);
    v.lead = closed_form::leading_term_radius_one(j, theta);
    return v;
  });
}

ScanReport radius_one_scan(double M, double theta0, double T, double R,
                           std::shared_ptr<const SmoothStep> step, const ScanOptions& opt) {
  const double eps1 = (kHalfPi - theta0) / 100.0;
  const HandleProfile p =
      HandleProfile::make(ProfileVariant::RadiusOneM, M, T, theta0, eps1, std::move(step));
  return scan_radius_one(p, R, opt);
}

RadiusOneSearch radius_one_ladder_search(double theta0, double T,
                                         std::span<const double> m_ladder,
                                         std::span<const double> r_ladder,
                                         std::shared_ptr<const SmoothStep> step,
                                         const ScanOptions& opt) {
  if (m_ladder.empty() || r_ladder.empty()) {
    throw PreconditionError("radius_one_ladder_search: empty ladder");
  }
  RadiusOneSearch out;
  for (const double M : m_ladder) {
    for (const double R : r_ladder) {
      out.report = radius_one_scan(M, theta0, T, R, step, opt);
      ++out.tried;
      if (out.report.positive) {
        out.found = true;
        out.big_m = M;
        out.R = R;
        return out;
      }
    }
  }
  return out;
}

MinRadius find_min_R(const HandleProfile& p, double R_lo, double R_hi, const ScanOptions& opt,
                     double rel_width) {
  if (!(R_lo > 0.0) || !(R_hi > 0.0)) {
    throw PreconditionError("find_min_R: bracket ends must be positive");
  }
  if (!(R_lo < R_hi)) {
    throw PreconditionError("find_min_R: degenerate bracket (need R_lo < R_hi)");
  }
  if (!(rel_width > 0.0)) throw PreconditionError("find_min_R: rel_width must be positive");

  ScanReport hi_scan = scan_scalar_curvature(p, R_hi, opt);
  if (!hi_scan.positive) {
    throw PreconditionError("find_min_R: scan at R_hi = " + std::to_string(R_hi) +
                            " is not POSITIVE; widen the bracket");
  }
  MinRadius out;
  ScanReport lo_scan = scan_scalar_curvature(p, R_lo, opt);
  if (lo_scan.positive) {
    out.r_star = out.r_lo = out.r_hi = R_lo;
    out.at_r_star = std::move(lo_scan);
    return out;
  }
  double lo = R_lo;
  double hi = R_hi;
  while ((hi - lo) > rel_width * hi) {
    const double mid = 0.5 * (lo + hi);
    ScanReport s = scan_scalar_curvature(p, mid, opt);
    ++out.iterations;
    if (s.positive) {
      hi = mid;
      hi_scan = std::move(s);
    } else {
      lo = mid;
      lo_scan = std::move(s);
    }
  }
  out.r_star = hi;
  out.r_lo = lo;
  out.r_hi = hi;
  out.at_r_star = std::move(hi_scan);
  out.at_lower = std::move(lo_scan);
  return out;
}

ScanReport alpha_scaled_scan(const HandleProfile& p, double alpha, double base_R, double base_T,
                             const ScanOptions& opt) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    throw PreconditionError("alpha_scaled_scan: alpha must be positive");
  }
  return scan_scalar_curvature(p.with_half_width(alpha * base_T), alpha * base_R, opt);
}

FiberRescale fiber_rescale_invariance(const ChartPoint& pt, double R, const HandleProfile& p,
                                      double c, double fd_step) {
  const ChartModel base = ChartModel::classic(R);
  const ChartModel scaled = base.with_fiber_scale(c);
  FiberRescale out;
  out.s_original = curvature_pipeline(pt, base, p, fd_step).scalar;
  out.s_rescaled = curvature_pipeline(pt, scaled, p, fd_step).scalar;
  return out;
}

}  // namespace handlepsc
