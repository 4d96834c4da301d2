#include <doctest.h>

#include <cmath>
#include <memory>
#include <numbers>

#include "handlepsc/errors.hpp"
#include "handlepsc/keyvalue.hpp"
#include "handlepsc/profile.hpp"

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

std::array<bool, 6> passes(const HandleProfile& p) {
  const auto items = check_boundary_conditions(p, boundary_check_grid(p));
  std::array<bool, 6> out{};
  for (int k = 0; k < 6; ++k) out[k] = items[k].pass;
  return out;
}

}  // namespace

TEST_CASE("construction validates every parameter") {
  const double e = (kHalfPi - 0.8) / 100.0;
  auto make = [&](ProfileVariant v, double a, double T, double th, double eps) {
    return HandleProfile::make(v, a, T, th, eps, shared_step());
  };
  CHECK_NOTHROW(make(ProfileVariant::ClassicR0, 0.25, 10, 0.8, e));
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.0, 10, 0.8, e), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.5, 10, 0.8, e), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.25, 0, 0.8, e), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.25, 10, 0.0, e), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.25, 10, kHalfPi, e), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.25, 10, 0.8, 0.0), PreconditionError);
  CHECK_THROWS_AS(make(ProfileVariant::ClassicR0, 0.25, 10, 0.8, (kHalfPi - 0.8) / 50.0),
                  PreconditionError);
  CHECK_NOTHROW(make(ProfileVariant::RadiusOneM, 0.0, 1, 0.8, e));
  CHECK_THROWS_AS(make(ProfileVariant::RadiusOneM, -1.0, 1, 0.8, e), PreconditionError);
}

TEST_CASE("profile values at the corners of the transition") {
  const HandleProfile p = classic();
  CHECK(p.value(0.3, 5.0) == 0.25);
  CHECK(p.value(1.2, -15.0) == 0.25);
  CHECK(p.value(kHalfPi, 15.0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(p.value(p.theta_hi(), 10.0) == doctest::Approx(-0.75).epsilon(1e-15));
  CHECK(p.time_factor(-10.0).value == 0.0);
  CHECK(p.time_factor(10.0).value == 1.0);
  CHECK(p.theta_factor(p.theta_lo()).value == 0.0);
  CHECK(p.theta_factor(p.theta_hi()).value == 1.0);
  CHECK(p.time_factor(0.0).value == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("jet matches central differences of the value") {
  const HandleProfile p = classic();
  const double h = 1e-5;
  for (const auto [th, t] : {std::pair{0.9, -3.0}, {1.1, 2.5}, {1.3, 7.0}, {1.0, 0.0}}) {
    const ProfileJet j = p.jet(th, t);
    auto r = [&](double a, double b) { return p.value(a, b); };
    auto rth = [&](double a, double b) { return p.jet(a, b).r_theta; };
    auto rt = [&](double a, double b) { return p.jet(a, b).r_t; };
    CAPTURE(th);
    CAPTURE(t);
    CHECK(j.r == doctest::Approx(r(th, t)).epsilon(1e-15));
    CHECK(std::abs(j.r_theta - (r(th + h, t) - r(th - h, t)) / (2 * h)) < 1e-7);
    CHECK(std::abs(j.r_t - (r(th, t + h) - r(th, t - h)) / (2 * h)) < 1e-7);
    CHECK(std::abs(j.r_thetatheta - (rth(th + h, t) - rth(th - h, t)) / (2 * h)) < 1e-6);
    CHECK(std::abs(j.r_tt - (rt(th, t + h) - rt(th, t - h)) / (2 * h)) < 1e-6);
    CHECK(std::abs(j.r_thetat - (rth(th, t + h) - rth(th, t - h)) / (2 * h)) < 1e-6);
    CHECK(std::abs(j.r_thetat - (rt(th + h, t) - rt(th - h, t)) / (2 * h)) < 1e-6);
  }
}

TEST_CASE("radius-one profile is 1 - M P Q") {
  const auto p = HandleProfile::make(ProfileVariant::RadiusOneM, 4.0, 1.0, 0.8,
                                     (kHalfPi - 0.8) / 100.0, shared_step());
  CHECK(p.base() == 1.0);
  CHECK(p.amplitude() == 4.0);
  CHECK(p.value(0.5, 0.0) == 1.0);
  CHECK(p.value(kHalfPi, 2.0) == doctest::Approx(-3.0));
  const double th = 1.0, t = 0.2;
  CHECK(p.value(th, t) == doctest::Approx(1.0 - 4.0 * p.time_factor(t).value *
                                                    p.theta_factor(th).value));
}

TEST_CASE("boundary conditions hold for the constructed profile") {
  const HandleProfile p = classic();
  const auto items = check_boundary_conditions(p, boundary_check_grid(p));
  for (const BoundaryItem& it : items) {
    CAPTURE(it.index);
    CHECK(it.pass);
    CHECK_FALSE(it.witness.has_value());
  }
}

TEST_CASE("base 1 leaves r = 0 with vanishing slopes at the pole") {
  const auto got = passes(classic().with_base_unchecked(1.0));
  CHECK(got == std::array<bool, 6>{true, true, true, false, true, false});
  const auto items = check_boundary_conditions(classic().with_base_unchecked(1.0),
                                               boundary_check_grid(classic()));
  REQUIRE(items[3].witness.has_value());
  CHECK(items[3].witness->theta == doctest::Approx(kHalfPi));
}

TEST_CASE("Q identically 0 never goes negative") {
  const HandleProfile p = classic().with_theta_factor(StepFactor::constant(0.0));
  CHECK(passes(p) == std::array<bool, 6>{true, true, true, false, true, true});
}

TEST_CASE("Q identically 1 breaks the theta-flat conditions") {
  const HandleProfile p = classic().with_theta_factor(StepFactor::constant(1.0));
  const auto got = passes(p);
  CHECK_FALSE(got[1]);  // r is no longer r0 for theta <= theta0
  CHECK(got[3]);
}

TEST_CASE("boundary check rejects coarse or short grids") {
  const HandleProfile p = classic();
  CHECK_THROWS_AS(check_boundary_conditions(p, boundary_check_grid(p, 50, 256)),
                  PreconditionError);
  SampleGrid g = boundary_check_grid(p);
  g.t_hi = 10.0;
  CHECK_THROWS_AS(check_boundary_conditions(p, g), PreconditionError);
}

TEST_CASE("warped factor keeps the step endpoints") {
  const auto f = StepFactor::warped(shared_step(), -1.0, 1.0, 2.0);
  CHECK(f.value(-1.0) == 0.0);
  CHECK(f.value(1.0) == 1.0);
  const double h = 1e-6, x = 0.3;
  CHECK(std::abs(f(x).d1 - (f.value(x + h) - f.value(x - h)) / (2 * h)) < 1e-6);
}

TEST_CASE("key-value records") {
  const KeyValues kv = KeyValues::parse("# header\nr0 = 0.2\nT=5 # inline\n\nvariant = classic\n");
  CHECK(kv.get_double("r0") == 0.2);
  CHECK(kv.get_double("T") == 5.0);
  CHECK(kv.get_string("variant") == "classic");
  CHECK_FALSE(kv.get_double("R").has_value());
  CHECK_THROWS_AS(KeyValues::parse("a = 1\na = 2\n"), ParseError);
  CHECK_THROWS_AS(KeyValues::parse("just words\n"), ParseError);
  CHECK_THROWS_AS(KeyValues::parse("x = \n"), ParseError);
  CHECK_THROWS_AS(KeyValues::parse("x = 1.5abc\n").get_double("x"), ParseError);
  CHECK_THROWS_AS(KeyValues::parse("n = 2.5\n").get_int("n"), ParseError);
  CHECK_THROWS_AS(KeyValues::load("/nonexistent/params"), ParseError);
  CHECK(kv.unknown_keys({"r0", "T"}) == std::vector<std::string>{"variant"});
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("profile config round-trips through key-value text") {
  ProfileConfig c;
  c.variant = ProfileVariant::RadiusOneM;
  c.big_m = 8.0;
  c.half_width = 1.0;
  c.theta0 = 0.7;
  KeyValues kv;
  c.write_to(kv);
  const ProfileConfig back = ProfileConfig::from_key_values(KeyValues::parse(kv.to_text()));
  CHECK(back.variant == ProfileVariant::RadiusOneM);
  CHECK(back.big_m == 8.0);
  CHECK(back.half_width == 1.0);
  CHECK(back.theta0 == 0.7);
  CHECK(back.eps1_or_default() == c.eps1_or_default());
  CHECK(ProfileConfig{}.eps1_or_default() == doctest::Approx((kHalfPi - 0.8) / 100.0));
  CHECK(parse_variant("radius_one") == ProfileVariant::RadiusOneM);
  CHECK(parse_variant(to_string(ProfileVariant::ClassicR0)) == ProfileVariant::ClassicR0);
  CHECK_THROWS(parse_variant("spherical"));
}
