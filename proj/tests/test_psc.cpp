#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "handlepsc/closed_form.hpp"
#include "handlepsc/errors.hpp"
#include "handlepsc/oracle_suite.hpp"
#include "handlepsc/psc.hpp"

using namespace handlepsc;

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::shared_ptr<const SmoothStep> shared_step() {
  static const auto s = std::make_shared<const SmoothStep>(SmoothStep::build(1024));
  return s;
}

HandleProfile classic(double r0 = 0.25, double T = 10.0, double theta0 = 0.8) {
  return HandleProfile::make(ProfileVariant::ClassicR0, r0, T, theta0, (kHalfPi - theta0) / 100.0,
                             shared_step());
}

ScanOptions grid(int n, bool keep = false, unsigned threads = 0) {
  ScanOptions o;
  o.n_theta = n;
  o.n_t = n;
  o.keep_field = keep;
  o.threads = threads;
  return o;
}

}  // namespace

TEST_CASE("leading term in the flat region is 16 r0^2 R^2") {
  const HandleProfile p = classic();
  CHECK(leading_term_N(p, 0.4, 0.0, 20.0) == doctest::Approx(16 * 0.0625 * 400.0));
  CHECK(leading_term_N(p, 1.2, -12.0, 3.0) == doctest::Approx(16 * 0.0625 * 9.0));
  const ProfileJet j = p.jet(1.1, 2.0);
  CHECK(leading_term_N(p, 1.1, 2.0, 5.0) ==
        doctest::Approx(closed_form::leading_term_classic(j, 1.1, 5.0)));
}

TEST_CASE("leading term on the r = 0 locus reduces to the slope terms") {
  const HandleProfile p = classic();
  const double th = 1.3;
  double lo = -10.0, hi = 10.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (p.value(th, mid) > 0.0 ? lo : hi) = mid;
  }
  const ProfileJet j = p.jet(th, lo);
  const double R = 7.0;
  const double expect = 4 * std::pow(R, 4) * j.r_t * j.r_t + 4 * R * R * j.r_theta * j.r_theta;
  CHECK(leading_term_N(p, th, lo, R) == doctest::Approx(expect).epsilon(1e-9));
  CHECK(expect > 0.0);
}

TEST_CASE("leading term is positive on the transition band") {
  const LeadingTermScan s = scan_leading_term(classic(), 20.0);
  CHECK(s.min_value > 0.0);
  CHECK(s.evaluated > 0);
}

TEST_CASE("region partition layout") {
  const double th0 = 0.8, e1 = (kHalfPi - th0) / 100.0, T = 10.0;
  const RegionPartition rp = region_partition(th0, e1, e1, T);
  const Rect& A = rp.blocks[0];
  const Rect& B = rp.blocks[1];
  const Rect& C = rp.blocks[2];
  const Rect& D = rp.blocks[3];
  const Rect& E = rp.blocks[4];
  CHECK(A.t_lo == 0.0);
  CHECK(C.t_hi == 0.0);
  CHECK(E.theta_hi == doctest::Approx((3 * th0 + kHalfPi) / 4));
  CHECK(B.theta_lo == E.theta_hi);
  CHECK(B.theta_hi == doctest::Approx(kHalfPi - e1));
  for (const Rect& r : rp.blocks) CHECK_FALSE(r.degenerate());

  // Every target point lies in a block and every block lies in the target.
  SampleStream rng(3);
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    const double th = rng.uniform(th0 + e1, kHalfPi - e1);
    const double t = rng.uniform(-T, T);
    bool inside = false;
    for (const Rect& r : rp.blocks) inside = inside || r.contains(th, t);
    CHECK(inside == rp.in_target(th, t));
    hits += inside ? 1 : 0;
  }
  CHECK(hits > 0);
  // A and C share only the line t = 0.
  CHECK(std::max(A.t_lo, C.t_lo) >= std::min(A.t_hi, C.t_hi));
}

TEST_CASE("region partition rejects out-of-range eps") {
  const double th0 = 0.8, e1 = (kHalfPi - th0) / 100.0;
  CHECK_THROWS_AS(region_partition(th0, e1, kHalfPi - th0, 10.0), PreconditionError);
  CHECK_THROWS_AS(region_partition(th0, e1, 0.0, 10.0), PreconditionError);
  CHECK_THROWS_AS(region_partition(th0, e1, 0.3, 0.2), PreconditionError);
}

TEST_CASE("region left-hand side equals -r_tt - r_thth + r_th tan") {
  const HandleProfile p = classic();
  for (const auto [th, t] : {std::pair{0.85, -9.5}, {1.0, 3.0}, {1.4, -2.0}}) {
    const ProfileJet j = p.jet(th, t);
    CHECK(region_lhs(p, th, t) ==
          doctest::Approx(-j.r_tt - j.r_thetatheta + j.r_theta * std::tan(th)).epsilon(1e-10));
  }
  const HandleProfile ones = p.with_theta_factor(StepFactor::constant(1.0))
                                 .with_time_factor(StepFactor::constant(1.0));
  const RegionPartition rp = region_partition(0.8, p.eps1(), 0.05, 10.0);
  for (const Rect& r : rp.blocks) {
    const RegionMin m = region_inequality_min(ones, r);
    CHECK(m.value == 0.0);
  }
}

TEST_CASE("find_epsilon passes on the halving ladder") {
  const HandleProfile p = classic();
  const auto ladder = default_epsilon_ladder(p);
  REQUIRE_FALSE(ladder.empty());
  const EpsilonSearch s = find_epsilon(p, ladder);
  REQUIRE(s.found);
  for (const RegionMin& m : s.trials.back().minima) {
    CHECK(m.evaluated);
    CHECK(m.value >= kRegionTolerance);
  }
  CHECK_THROWS_AS(find_epsilon(p, std::vector<double>{}), PreconditionError);
  CHECK_THROWS_AS(find_epsilon(p, std::vector<double>{0.01, 0.02}), PreconditionError);
}

TEST_CASE("region A with an oversized eps goes negative") {
  const HandleProfile p = classic();
  const double ub = (kHalfPi - p.theta0() - p.eps1()) / 2.0;
  const RegionPartition rp = region_partition(p.theta0(), p.eps1(), 0.99 * ub, p.half_width());
  const RegionMin a = region_inequality_min(p, rp.blocks[0]);
  CHECK(a.value < 0.0);
}

TEST_CASE("region grids below 128 per side are rejected") {
  const HandleProfile p = classic();
  const RegionPartition rp = region_partition(0.8, p.eps1(), 0.05, 10.0);
  CHECK_THROWS_AS(region_inequality_min(p, rp.blocks[0], 64, 128), PreconditionError);
}

TEST_CASE("scan: flat value, verdicts and grid limits") {
  const HandleProfile p = classic();
  const ScanReport big = scan_scalar_curvature(p, 20.0, grid(100));
  CHECK(big.positive);
  CHECK(big.min_s == doctest::Approx(2.0 / 400.0).epsilon(1e-12));
  CHECK(big.excluded_negative > 0);
  CHECK(big.evaluated + big.excluded_negative == 100 * 100);

  const ScanReport small = scan_scalar_curvature(p, 0.1, grid(100));
  CHECK_FALSE(small.positive);
  CHECK(small.min_s < 0.0);
  CHECK(small.argmin.theta > p.theta0());

  CHECK_THROWS_AS(scan_scalar_curvature(p, 20.0, grid(1)), PreconditionError);
}

TEST_CASE("scan does not depend on the thread count") {
  const HandleProfile p = classic();
  const ScanReport a = scan_scalar_curvature(p, 2.0, grid(60, true, 1));
  const ScanReport b = scan_scalar_curvature(p, 2.0, grid(60, true, 3));
  CHECK(a.min_s == b.min_s);
  CHECK(a.argmin.theta == b.argmin.theta);
  CHECK(a.argmin.t == b.argmin.t);
  REQUIRE(a.s_field.size() == b.s_field.size());
  for (std::size_t i = 0; i < a.s_field.size(); ++i) {
    CHECK(((std::isnan(a.s_field[i]) && std::isnan(b.s_field[i])) || a.s_field[i] == b.s_field[i]));
  }
}

TEST_CASE("find_min_R brackets and errors") {
  const HandleProfile p = classic();
  const MinRadius m = find_min_R(p, 1.0, 20.0, grid(80));
  CHECK(m.at_r_star.positive);
  CHECK(m.r_star == m.r_hi);
  CHECK((m.r_hi - m.r_lo) <= 1e-3 * m.r_hi);
  REQUIRE(m.at_lower.has_value());
  CHECK_FALSE(m.at_lower->positive);
  CHECK(scan_scalar_curvature(p, 2.0 * m.r_star, grid(80)).positive);

  const MinRadius easy = find_min_R(p, 15.0, 20.0, grid(80));
  CHECK(easy.r_star == 15.0);
  CHECK(easy.iterations == 0);

  CHECK_THROWS_AS(find_min_R(p, 5.0, 5.0, grid(80)), PreconditionError);
  CHECK_THROWS_AS(find_min_R(p, 0.05, 0.1, grid(80)), PreconditionError);
  CHECK_THROWS_AS(find_min_R(p, -1.0, 5.0, grid(80)), PreconditionError);
}

TEST_CASE("alpha scaling") {
  const HandleProfile p = classic();
  const ScanReport one = alpha_scaled_scan(p, 1.0, 20.0, 10.0, grid(60));
  const ScanReport direct = scan_scalar_curvature(p, 20.0, grid(60));
  CHECK(one.min_s == direct.min_s);
  bool was_positive = false;
  for (double a : {1.0, 2.0, 4.0, 8.0}) {
    const ScanReport r = alpha_scaled_scan(p, a, 20.0, 10.0, grid(60));
    CAPTURE(a);
    if (was_positive) CHECK(r.positive);
    was_positive = r.positive;
    CHECK(r.min_s * a * a > 0.0);
  }
  CHECK_THROWS_AS(alpha_scaled_scan(p, 0.0, 20.0, 10.0, grid(60)), PreconditionError);
}

TEST_CASE("fiber rescaling leaves S alone") {
  const HandleProfile p = classic();
  const ChartPoint pt{1.05, 0.4, 1.5, 2.0};
  const FiberRescale same = fiber_rescale_invariance(pt, 5.0, p, 1.0);
  CHECK(same.s_original == same.s_rescaled);
  for (double c : {0.1, 10.0}) {
    const FiberRescale f = fiber_rescale_invariance(pt, 5.0, p, c);
    CHECK(std::abs(f.s_original - f.s_rescaled) < 1e-6);
  }
  CHECK_THROWS_AS(fiber_rescale_invariance(pt, 5.0, p, 0.0), PreconditionError);
}

TEST_CASE("radius-one family") {
  const ScanReport zero = radius_one_scan(0.0, 0.8, 1.0, 16.0, shared_step(), grid(50));
  CHECK(zero.min_s == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(zero.positive);
  CHECK(zero.r_floor == kRadiusOneFloor);

  const std::vector<double> ms = {1.0, 2.0, 4.0, 8.0};
  const std::vector<double> rs = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0};
  const RadiusOneSearch s = radius_one_ladder_search(0.8, 1.0, ms, rs, shared_step(), grid(100));
  CHECK(s.found);
  CHECK(s.report.positive);
  CHECK(s.report.excluded_negative + s.report.excluded_floor > 0);
}
