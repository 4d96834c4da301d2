#include "handlepsc/chart.hpp"

#include <cmath>
#include <string>

#include "handlepsc/errors.hpp"

namespace handlepsc {

ChartModel ChartModel::classic(double R) {
  if (!(R > 0.0) || !std::isfinite(R)) {
    throw PreconditionError("chart: R must be positive, got " + std::to_string(R));
  }
  return {Kind::Classic, R, 1.0};
}

ChartModel ChartModel::radius_one(double R) {
  ChartModel m = classic(R);
  m.kind = Kind::RadiusOne;
  return m;
}

ChartModel ChartModel::with_fiber_scale(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw PreconditionError("fiber scale must be positive (c = " + std::to_string(c) +
                            " gives a degenerate metric)");
  }
  ChartModel m = *this;
  m.fiber_scale = fiber_scale * c;
  return m;
}

double ChartModel::fiber_speed() const {
  const double base = kind == Kind::Classic ? 1.0 : big_r;
  return base * std::sqrt(fiber_scale);
}

}  // namespace handlepsc
