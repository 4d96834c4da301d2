#include "handlepsc/oracle_suite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "handlepsc/closed_form.hpp"
#include "handlepsc/curvature.hpp"
#include "handlepsc/embedding.hpp"
#include "handlepsc/errors.hpp"
#include "handlepsc/metric.hpp"

namespace handlepsc {
namespace {

std::string pair_name(const char* prefix, int i, int k) {
  return std::string(prefix) + kCoordNames[i] + ' ' + kCoordNames[k] + '}';
}

std::string gamma_name(int k, int i, int j) {
  return std::string("Gamma^") + kCoordNames[k] + "_{" + kCoordNames[i] + ' ' +
         kCoordNames[j] + '}';
}

// Accumulates per-component worst errors in first-seen order.
class DiffTable {
 public:
  DiffTable(double tol, std::optional<std::string> fault)
      : tol_(tol), fault_(std::move(fault)) {}

  void compare(const std::string& name, double closed, double oracle, double scale,
               const ChartPoint& at) {
    if (fault_ && *fault_ == name) {
      closed = closed * 1.01 + 1e-2 * std::max(scale, 1.0);
    }
    const double denom = std::max(std::abs(closed), std::abs(oracle)) + scale;
    double err = denom > 0.0 ? std::abs(closed - oracle) / denom : 0.0;
    if (std::isnan(err)) err = HUGE_VAL;
    auto [it, inserted] = index_.emplace(name, rows_.size());
    if (inserted) rows_.push_back({name, -1.0, at, closed, oracle, true});
    ComponentDiff& row = rows_[it->second];
    if (err > row.worst_error) {
      row.worst_error = err;
      row.worst_at = at;
      row.closed_value = closed;
      row.oracle_value = oracle;
    }
  }

  std::vector<ComponentDiff> finish() {
    for (ComponentDiff& row : rows_) row.pass = row.worst_error <= tol_;
    return std::move(rows_);
  }

 private:
  double tol_;
  std::optional<std::string> fault_;
  std::vector<ComponentDiff> rows_;
  std::map<std::string, std::size_t> index_;
};

double max_abs(const Mat4& m) { return m.cwiseAbs().maxCoeff(); }

}  // namespace

SampleStream::SampleStream(std::uint64_t seed) : engine_(seed) {}

double SampleStream::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

SampleWindow default_sample_window(const HandleProfile& p) {
  const double T = p.half_width();
  SampleWindow w;
  w.theta_lo = 0.5 * p.theta0();
  w.theta_hi = std::numbers::pi / 2.0 - std::max(0.5 * p.eps1(), 0.1);
  w.t_lo = -1.25 * T;
  w.t_hi = 1.25 * T;
  return w;
}

std::vector<ChartPoint> sample_chart_points(const HandleProfile& p, const SampleWindow& window,
                                            int n, std::uint64_t seed) {
  if (n < 0) throw PreconditionError("sample_chart_points: negative count");
  SampleStream rng(seed);
  std::vector<ChartPoint> out;
  out.reserve(static_cast<std::size_t>(n));
  const long max_draws = 1000L * std::max(n, 1);
  for (long draws = 0; static_cast<int>(out.size()) < n; ++draws) {
    if (draws > max_draws) {
      throw PreconditionError("sample_chart_points: window has almost no points with r >= " +
                              std::to_string(window.r_floor));
    }
    ChartPoint pt;
    pt.theta = rng.uniform(window.theta_lo, window.theta_hi);
    pt.t = rng.uniform(window.t_lo, window.t_hi);
    pt.phi = rng.uniform(0.0, 2.0 * std::numbers::pi);
    pt.alpha = rng.uniform(0.0, 2.0 * std::numbers::pi);
    if (p.value(pt.theta, pt.t) >= window.r_floor) out.push_back(pt);
  }
  return out;
}

const ComponentDiff& OracleReport::worst() const {
  if (components.empty()) throw PreconditionError("OracleReport: no components");
  return *std::max_element(components.begin(), components.end(),
                           [](const ComponentDiff& a, const ComponentDiff& b) {
                             return a.worst_error < b.worst_error;
                           });
}

std::vector<std::string> oracle_component_names(ChartModel::Kind kind) {
  std::vector<std::string> names;
  for (int i = 0; i < 4; ++i) {
    for (int k = i; k < 4; ++k) names.push_back(pair_name("g_{", i, k));
  }
  if (kind == ChartModel::Kind::Classic) {
    for (int i = 0; i < 4; ++i) {
      for (int k = i; k < 4; ++k) names.push_back(pair_name("g^{", i, k));
    }
    for (int c = 0; c < 4; ++c) {
      for (int i = 0; i < 4; ++i) {
        for (int k = i; k < 4; ++k) names.push_back(gamma_name(c, i, k));
      }
    }
    ProfileJet flat{1.0, 0.0, 0.0, 0.0, 0.0, 0.0};
    for (const auto& rc : closed_form::riemann_classic(flat, 0.5, 1.0)) names.push_back(rc.name);
    for (const auto& rc : closed_form::ricci_classic(flat, 0.5, 1.0)) names.push_back(rc.name);
  }
  names.push_back("S");
  return names;
}

OracleReport run_oracle_suite(const HandleProfile& p, const ChartModel& model,
                              const OracleOptions& options) {
  if (options.points < 1) throw PreconditionError("oracle suite: need at least one point");
  if (options.inject_fault) {
    const auto names = oracle_component_names(model.kind);
    if (std::find(names.begin(), names.end(), *options.inject_fault) == names.end()) {
      throw PreconditionError("oracle suite: unknown component `" + *options.inject_fault + "`");
    }
  }
  const bool classic = model.kind == ChartModel::Kind::Classic;
  const double R = model.big_r;
  const SampleWindow window = options.window.value_or(default_sample_window(p));
  const auto points = sample_chart_points(p, window, options.points, options.seed);

  DiffTable table(options.rel_tol, options.inject_fault);
  OracleReport report;
  report.points = options.points;
  report.rel_tol = options.rel_tol;

  for (const ChartPoint& pt : points) {
    const ProfileJet j = p.jet(pt.theta, pt.t);
    const CurvatureBundle b = curvature_pipeline(pt, model, p, options.fd_step);
    report.max_angular_derivative = std::max(report.max_angular_derivative, b.angular_derivative);

    const Mat4 g_oracle = induced_metric_oracle(pt, model, p, options.fd_step);
    const Mat4 g_closed = classic ? closed_form::metric_classic(j, pt.theta, R, model.fiber_scale)
                                  : closed_form::metric_radius_one(j, pt.theta, R);
    const double g_scale = max_abs(g_oracle);
    for (int i = 0; i < 4; ++i) {
      for (int k = i; k < 4; ++k) {
        table.compare(pair_name("g_{", i, k), g_closed(i, k), g_oracle(i, k), g_scale, pt);
      }
    }

    if (classic) {
      const Mat4 gi = closed_form::inverse_metric_classic(j, pt.theta, R);
      const double gi_scale = max_abs(b.g_inv);
      for (int i = 0; i < 4; ++i) {
        for (int k = i; k < 4; ++k) {
          table.compare(pair_name("g^{", i, k), gi(i, k), b.g_inv(i, k), gi_scale, pt);
        }
      }

      const ChristoffelSymbols G = closed_form::christoffel_classic(j, pt.theta, R);
      double G_scale = 0.0;
      for (const Mat4& m : b.gamma) G_scale = std::max(G_scale, max_abs(m));
      for (int c = 0; c < 4; ++c) {
        for (int i = 0; i < 4; ++i) {
          for (int k = i; k < 4; ++k) {
            table.compare(gamma_name(c, i, k), G[c](i, k), b.gamma[c](i, k), G_scale, pt);
          }
        }
      }

      const double riem_scale = b.riemann.max_abs();
      for (const auto& rc : closed_form::riemann_classic(j, pt.theta, R)) {
        const auto& ix = rc.index;
        table.compare(rc.name, rc.value, b.riemann(ix[0], ix[1], ix[2], ix[3]), riem_scale, pt);
      }
      const double ric_scale = max_abs(b.ricci);
      for (const auto& rc : closed_form::ricci_classic(j, pt.theta, R)) {
        table.compare(rc.name, rc.value, b.ricci(rc.i, rc.k), ric_scale, pt);
      }
    }

    // S is a contraction; its natural size is the sum of the absolute terms.
    const double s_scale = b.g_inv.cwiseProduct(b.ricci).cwiseAbs().sum();
    const double s_closed = classic ? closed_form::scalar_classic(j, pt.theta, R)
                                    : closed_form::scalar_radius_one(j, pt.theta, R);
    table.compare("S", s_closed, b.scalar, s_scale, pt);
  }

  report.components = table.finish();
  report.pass = std::all_of(report.components.begin(), report.components.end(),
                            [](const ComponentDiff& c) { return c.pass; });
  return report;
}

}  // namespace handlepsc
