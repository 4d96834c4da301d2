#include "handlepsc/profile.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "handlepsc/errors.hpp"

namespace handlepsc {
namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void require(bool ok, const std::string& message) {
  if (!ok) throw PreconditionError("make_profile: " + message);
}

}  // namespace

std::string to_string(ProfileVariant v) {
  return v == ProfileVariant::ClassicR0 ? "classic" : "radius_one";
}

ProfileVariant parse_variant(const std::string& text) {
  if (text == "classic" || text == "ClassicR0") return ProfileVariant::ClassicR0;
  if (text == "radius_one" || text == "RadiusOneM") return ProfileVariant::RadiusOneM;
  throw ParseError("unknown profile variant `" + text + "`");
}

StepFactor StepFactor::ramp(std::shared_ptr<const SmoothStep> step, double lo,
                            double hi) {
  return warped(std::move(step), lo, hi, 1.0);
}

StepFactor StepFactor::constant(double c) {
  StepFactor f;
  f.constant_ = c;
  return f;
}

StepFactor StepFactor::warped(std::shared_ptr<const SmoothStep> step, double lo,
                              double hi, double power) {
  if (!step) throw PreconditionError("StepFactor: null step");
  if (!(hi > lo)) throw PreconditionError("StepFactor: empty support");
  if (!(power > 0.0)) throw PreconditionError("StepFactor: power must be positive");
  StepFactor f;
  f.step_ = std::move(step);
  f.lo_ = lo;
  f.hi_ = hi;
  f.power_ = power;
  return f;
}

StepJet StepFactor::operator()(double x) const {
  if (!step_) return {constant_, 0.0, 0.0};
  const double w = hi_ - lo_;
  const double u = (x - lo_) / w;
  if (u <= 0.0) return {0.0, 0.0, 0.0};
  if (u >= 1.0) return {1.0, 0.0, 0.0};
  if (power_ == 1.0) {
    return {step_->eval(u, 0), step_->eval(u, 1) / w, step_->eval(u, 2) / (w * w)};
  }
  const double v = std::pow(u, power_);
  const double dv = power_ * std::pow(u, power_ - 1.0) / w;
  const double ddv = power_ * (power_ - 1.0) * std::pow(u, power_ - 2.0) / (w * w);
  const double s1 = step_->eval(v, 1);
  return {step_->eval(v, 0), s1 * dv, step_->eval(v, 2) * dv * dv + s1 * ddv};
}

double StepFactor::value(double x) const { return (*this)(x).value; }

HandleProfile HandleProfile::make(ProfileVariant variant, double r0_or_m,
                                  double T, double theta0, double eps1,
                                  std::shared_ptr<const SmoothStep> step) {
  require(step != nullptr, "step function is null");
  if (variant == ProfileVariant::ClassicR0) {
    require(r0_or_m > 0.0 && r0_or_m < 0.5, "r0 must lie in (0, 1/2)");
  } else {
    require(r0_or_m >= 0.0 && std::isfinite(r0_or_m), "M must be >= 0");
  }
  require(T > 0.0 && std::isfinite(T), "T must be positive");
  require(theta0 > 0.0 && theta0 < kHalfPi, "theta0 must lie in (0, pi/2)");
  require(eps1 > 0.0 && eps1 < (kHalfPi - theta0) / 50.0,
          "eps1 must lie in (0, (pi/2 - theta0)/50)");

  HandleProfile p;
  p.variant_ = variant;
  p.half_width_ = T;
  p.theta0_ = theta0;
  p.eps1_ = eps1;
  p.step_ = step;
  if (variant == ProfileVariant::ClassicR0) {
    p.r0_ = r0_or_m;
    p.base_ = r0_or_m;
    p.amplitude_ = 1.0;
  } else {
    p.big_m_ = r0_or_m;
    p.base_ = 1.0;
    p.amplitude_ = r0_or_m;
  }
  p.p_ = StepFactor::ramp(step, -T, T);
  p.q_ = StepFactor::ramp(step, theta0 + eps1, kHalfPi - eps1);
  return p;
}

double HandleProfile::theta_hi() const { return kHalfPi - eps1_; }

ProfileJet HandleProfile::jet(double theta, double t) const {
  const StepJet p = p_(t);
  const StepJet q = q_(theta);
  const double k = amplitude_;
  ProfileJet j;
  j.r = base_ - k * p.value * q.value;
  j.r_theta = -k * p.value * q.d1;
  j.r_t = -k * p.d1 * q.value;
  j.r_thetatheta = -k * p.value * q.d2;
  j.r_thetat = -k * p.d1 * q.d1;
  j.r_tt = -k * p.d2 * q.value;
  return j;
}

double HandleProfile::value(double theta, double t) const {
  return base_ - amplitude_ * p_.value(t) * q_.value(theta);
}

HandleProfile HandleProfile::with_half_width(double T) const {
  const double r0_or_m = variant_ == ProfileVariant::ClassicR0 ? r0_ : big_m_;
  return make(variant_, r0_or_m, T, theta0_, eps1_, step_);
}

HandleProfile HandleProfile::with_base_unchecked(double base) const {
  HandleProfile p = *this;
  p.base_ = base;
  if (variant_ == ProfileVariant::ClassicR0) p.r0_ = base;
  return p;
}

HandleProfile HandleProfile::with_theta_factor(StepFactor q) const {
  HandleProfile p = *this;
  p.q_ = std::move(q);
  return p;
}

HandleProfile HandleProfile::with_time_factor(StepFactor f) const {
  HandleProfile p = *this;
  p.p_ = std::move(f);
  return p;
}

SampleGrid boundary_check_grid(const HandleProfile& p, int n_theta, int n_t) {
  const double T = p.half_width();
  return {0.0, kHalfPi, -2.0 * T, 2.0 * T, n_theta, n_t};
}

std::array<BoundaryItem, 6> check_boundary_conditions(const HandleProfile& p,
                                                      const SampleGrid& grid) {
  if (grid.n_theta < 100 || grid.n_t < 100) {
    throw PreconditionError("check_boundary_conditions: grid needs >= 100 x 100 points");
  }
  const double T = p.half_width();
  if (grid.theta_lo > 0.0 || grid.theta_hi < kHalfPi || grid.t_lo > -2.0 * T ||
      grid.t_hi < 2.0 * T) {
    throw PreconditionError(
        "check_boundary_conditions: grid must cover [0, pi/2] x [-2T, 2T]");
  }
  constexpr double kTol = 1e-14;
  constexpr double kVanish = 1e-10;

  std::array<BoundaryItem, 6> items;
  const char* descriptions[6] = {
      "r is constant in t for t < -T and for t > T",
      "r is constant for theta <= theta0 or t <= -T",
      "r is constant in theta for theta >= pi/2 - eps1",
      "r(pi/2, t) < 0 for t > T",
      "r is non-increasing in theta and in t",
      "r, r_theta and r_t never vanish together",
  };
  for (int k = 0; k < 6; ++k) {
    items[k].index = k + 1;
    items[k].description = descriptions[k];
  }
  auto fail = [&](int item, double theta, double t) {
    BoundaryItem& b = items[item - 1];
    if (b.pass) {
      b.pass = false;
      b.witness = GridPoint{theta, t};
    }
  };

  const int nth = grid.n_theta;
  const int nt = grid.n_t;
  std::vector<double> r(grid.size());
  auto at = [&](int i, int j) -> double& {
    return r[static_cast<std::size_t>(i) * nt + j];
  };
  for (int i = 0; i < nth; ++i) {
    for (int j = 0; j < nt; ++j) at(i, j) = p.value(grid.theta(i), grid.t(j));
  }

  const double theta_cap = p.theta_hi();
  for (int i = 0; i < nth; ++i) {
    const double th = grid.theta(i);
    // Item 1: compare against the first sample on each side.
    int first_low = -1;
    int first_high = -1;
    for (int j = 0; j < nt; ++j) {
      const double t = grid.t(j);
      if (t < -T) {
        if (first_low < 0) first_low = j;
        else if (at(i, j) != at(i, first_low)) fail(1, th, t);
      } else if (t > T) {
        if (first_high < 0) first_high = j;
        else if (at(i, j) != at(i, first_high)) fail(1, th, t);
      }
    }
    // Item 2.
    for (int j = 0; j < nt; ++j) {
      const double t = grid.t(j);
      if ((th <= p.theta0() || t <= -T) && at(i, j) != p.base()) fail(2, th, t);
    }
  }

  // Item 3.
  for (int j = 0; j < nt; ++j) {
    int first = -1;
    for (int i = 0; i < nth; ++i) {
      if (grid.theta(i) < theta_cap) continue;
      if (first < 0) first = i;
      else if (std::abs(at(i, j) - at(first, j)) > kTol) fail(3, grid.theta(i), grid.t(j));
    }
  }

  // Item 4, sampled on the grid's t values at theta = pi/2 exactly.
  for (int j = 0; j < nt; ++j) {
    const double t = grid.t(j);
    if (t > T && !(p.value(kHalfPi, t) < 0.0)) fail(4, kHalfPi, t);
  }

  // Item 5.
  for (int i = 0; i < nth; ++i) {
    for (int j = 0; j < nt; ++j) {
      if (i + 1 < nth && at(i + 1, j) > at(i, j) + kTol) fail(5, grid.theta(i + 1), grid.t(j));
      if (j + 1 < nt && at(i, j + 1) > at(i, j) + kTol) fail(5, grid.theta(i), grid.t(j + 1));
    }
  }

  // Item 6.
  double best = HUGE_VAL;
  GridPoint where;
  for (int i = 0; i < nth; ++i) {
    for (int j = 0; j < nt; ++j) {
      const ProfileJet jt = p.jet(grid.theta(i), grid.t(j));
      const double m = std::max({std::abs(jt.r), std::abs(jt.r_theta), std::abs(jt.r_t)});
      if (m < best) {
        best = m;
        where = {grid.theta(i), grid.t(j)};
      }
    }
  }
  if (!(best > kVanish)) fail(6, where.theta, where.t);

  return items;
}

double ProfileConfig::eps1_or_default() const {
  return eps1 ? *eps1 : (kHalfPi - theta0) / 100.0;
}

HandleProfile ProfileConfig::build() const {
  return build(std::make_shared<const SmoothStep>(SmoothStep::build(quadrature_points)));
}

HandleProfile ProfileConfig::build(std::shared_ptr<const SmoothStep> step) const {
  const double a = variant == ProfileVariant::ClassicR0 ? r0 : big_m;
  return HandleProfile::make(variant, a, half_width, theta0, eps1_or_default(),
                             std::move(step));
}

ProfileConfig ProfileConfig::from_key_values(const KeyValues& kv) {
  ProfileConfig c;
  if (auto v = kv.get_string("variant")) c.variant = parse_variant(*v);
  if (auto v = kv.get_double("r0")) c.r0 = *v;
  if (auto v = kv.get_double("M")) c.big_m = *v;
  if (auto v = kv.get_double("T")) c.half_width = *v;
  if (auto v = kv.get_double("theta0")) c.theta0 = *v;
  if (auto v = kv.get_double("eps1")) c.eps1 = *v;
  if (auto v = kv.get_int("quadrature_points")) c.quadrature_points = *v;
  return c;
}

void ProfileConfig::write_to(KeyValues& kv) const {
  kv.set("variant", to_string(variant));
  kv.set("r0", r0);
  kv.set("M", big_m);
  kv.set("T", half_width);
  kv.set("theta0", theta0);
  kv.set("eps1", eps1_or_default());
  kv.set("quadrature_points", quadrature_points);
}

}  // namespace handlepsc
