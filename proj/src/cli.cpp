#include "handlepsc/cli.hpp"

#include <CLI11.hpp>

#include <array>
#include <charconv>
#include <fstream>
#include <sstream>

#include "handlepsc/chart.hpp"
#include "handlepsc/errors.hpp"
#include "handlepsc/keyvalue.hpp"
#include "handlepsc/linkconfig.hpp"
#include "handlepsc/oracle_suite.hpp"
#include "handlepsc/psc.hpp"
#include "handlepsc/report.hpp"
#include "handlepsc/stepfn.hpp"

namespace handlepsc {
namespace {

using nlohmann::json;

// Failures that are the user's fault rather than the suite's.
class UsageError : public Error {
 public:
  using Error::Error;
};

json point_json(const ChartPoint& p) {
  return {{"theta", json_number(p.theta)},
          {"phi", json_number(p.phi)},
          {"t", json_number(p.t)},
          {"alpha", json_number(p.alpha)}};
}

json record(const RunConfig& cfg) {
  json j;
  j["schema"] = kReportSchema;
  j["command"] = cfg.subcommand;
  j["config"] = cfg.to_json();
  return j;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw UsageError("failed writing " + path.string());
}

void prepare_out_dir(const RunConfig& cfg) {
  if (!cfg.out_dir) return;
  std::error_code ec;
  std::filesystem::create_directories(*cfg.out_dir, ec);
  if (ec) throw UsageError("cannot create " + cfg.out_dir->string() + ": " + ec.message());
}

ChartModel chart_model(const RunConfig& cfg) {
  return cfg.profile.variant == ProfileVariant::ClassicR0 ? ChartModel::classic(cfg.big_r)
                                                          : ChartModel::radius_one(cfg.big_r);
}

ScanReport run_scan(const RunConfig& cfg, const HandleProfile& p, double R, bool keep_field) {
  ScanOptions opt;
  opt.n_theta = cfg.grid_theta;
  opt.n_t = cfg.grid_t;
  opt.keep_field = keep_field;
  return cfg.profile.variant == ProfileVariant::ClassicR0 ? scan_scalar_curvature(p, R, opt)
                                                          : scan_radius_one(p, R, opt);
}

int cmd_verify_curvature(const RunConfig& cfg, json& j) {
  const HandleProfile p = cfg.profile.build();
  OracleOptions opt;
  opt.points = cfg.points;
  opt.seed = cfg.seed;
  opt.inject_fault = cfg.inject_fault;
  const OracleReport rep = run_oracle_suite(p, chart_model(cfg), opt);

  const ComponentDiff& worst = rep.worst();
  j["worst"] = {{"component", worst.name},
                {"error", json_number(worst.worst_error)},
                {"at", point_json(worst.worst_at)},
                {"closed", json_number(worst.closed_value)},
                {"oracle", json_number(worst.oracle_value)}};
  json failing = json::array();
  for (const ComponentDiff& c : rep.components) {
    if (!c.pass) failing.push_back(c.name);
  }
  j["failing"] = failing;
  j["components"] = rep.components.size();
  j["rel_tol"] = rep.rel_tol;
  j["max_angular_derivative"] = json_number(rep.max_angular_derivative);
  j["pass"] = rep.pass;
  return rep.pass ? kExitPass : kExitFail;
}

int cmd_psc_scan(const RunConfig& cfg, json& j) {
  const HandleProfile p = cfg.profile.build();
  const bool keep = cfg.out_dir.has_value();
  const ScanReport rep = run_scan(cfg, p, cfg.big_r, keep);
  j["scan"] = to_json(rep);
  if (cfg.out_dir) {
    std::ostringstream csv;
    write_scan_csv(csv, rep);
    write_text(*cfg.out_dir / "scan.csv", csv.str());
    j["csv"] = (*cfg.out_dir / "scan.csv").string();
    if (cfg.heatmap) {
      try {
        write_heatmap_ppm(*cfg.out_dir / "heatmap.ppm", rep);
      } catch (const std::runtime_error& e) {
        throw UsageError(e.what());
      }
      j["heatmap"] = (*cfg.out_dir / "heatmap.ppm").string();
    }
  }
  j["pass"] = rep.positive;
  return rep.positive ? kExitPass : kExitFail;
}

int cmd_find_r(const RunConfig& cfg, json& j) {
  const HandleProfile p = cfg.profile.build();
  if (cfg.profile.variant != ProfileVariant::ClassicR0) {
    throw UsageError("find-r needs variant = classic");
  }
  ScanOptions opt;
  opt.n_theta = cfg.grid_theta;
  opt.n_t = cfg.grid_t;
  if (!(cfg.r_lo > 0.0) || !(cfg.r_lo < cfg.r_hi)) {
    throw UsageError("find-r needs 0 < R_lo < R_hi");
  }
  const ScanReport top = scan_scalar_curvature(p, cfg.r_hi, opt);
  if (!top.positive) {
    j["found"] = false;
    j["at_R_hi"] = to_json(top);
    j["pass"] = false;
    return kExitFail;
  }
  const MinRadius m = find_min_R(p, cfg.r_lo, cfg.r_hi, opt);
  j["found"] = true;
  j["R_star"] = json_number(m.r_star);
  j["bracket"] = {json_number(m.r_lo), json_number(m.r_hi)};
  j["iterations"] = m.iterations;
  j["at_R_star"] = to_json(m.at_r_star);
  j["at_lower"] = m.at_lower ? to_json(*m.at_lower) : json(nullptr);
  j["pass"] = m.at_r_star.positive;
  return m.at_r_star.positive ? kExitPass : kExitFail;
}

int cmd_regions(const RunConfig& cfg, json& j) {
  const HandleProfile p = cfg.profile.build();
  const std::vector<double> ladder = default_epsilon_ladder(p);
  const EpsilonSearch s = find_epsilon(p, ladder);
  j["ladder"] = ladder;
  j["trials"] = s.trials.size();
  j["found"] = s.found;
  j["eps"] = s.found ? json(s.eps) : json(nullptr);
  if (!s.trials.empty()) {
    const EpsilonTrial& last = s.trials.back();
    json minima = json::object();
    for (std::size_t b = 0; b < last.minima.size(); ++b) {
      const RegionMin& m = last.minima[b];
      minima[std::string(1, RegionPartition::kNames[b])] = {
          {"min", m.evaluated ? json_number(m.value) : json(nullptr)},
          {"argmin", to_json(m.argmin)},
          {"evaluated", m.evaluated}};
    }
    j["minima"] = minima;
  }
  j["tolerance"] = kRegionTolerance;
  j["pass"] = s.found;
  return s.found ? kExitPass : kExitFail;
}

int cmd_config_check(const RunConfig& cfg, json& j) {
  if (!cfg.config_path) throw UsageError("config-check needs --config <file>");
  const LinkConfig lc = load_config(*cfg.config_path);
  const Verdict v = theorem_applicable(lc);
  const Verdict g = black_graph_check(black_graph(lc));
  const bool agree = v.applicable == g.applicable && v.witness == g.witness;
  j["circles"] = lc.circles;
  j["arcs"] = lc.arcs.size();
  j["verdict"] = verdict_json(v);
  j["graph_form_agrees"] = agree;
  j["pass"] = v.applicable && agree;
  return v.applicable && agree ? kExitPass : kExitFail;
}

int cmd_step_check(const RunConfig& cfg, json& j) {
  const SmoothStep step = SmoothStep::build(cfg.profile.quadrature_points);
  std::vector<double> ladder;
  for (int k = 0; k <= 5; ++k) ladder.push_back(0.25 / (1 << k));
  const RatioReport r = check_limit_ratios(step, ladder);
  j["normalization"] = step.normalization();
  j["slope_at_half"] = step.eval(0.5, 1);
  j["value_at_one"] = step.value(1.0);
  j["ladder"] = r.ladder;
  j["value_ratio"] = r.value_ratio;
  j["slope_ratio"] = r.slope_ratio;
  j["pass"] = r.pass;
  return r.pass ? kExitPass : kExitFail;
}

}  // namespace

std::pair<int, int> parse_grid(const std::string& text) {
  const auto x = text.find('x');
  auto number = [&](std::string_view s) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || v < 1) {
      throw ParseError("grid must look like NxM with N, M >= 1, got `" + text + "`");
    }
    return v;
  };
  if (x == std::string::npos) number("");
  const std::string_view all(text);
  return {number(all.substr(0, x)), number(all.substr(x + 1))};
}

void RunConfig::load_params() {
  if (!params_path) return;
  if (!std::filesystem::is_regular_file(*params_path)) {
    throw ParseError("parameter file not found: " + params_path->string());
  }
  const KeyValues kv = KeyValues::load(*params_path);
  const auto unknown = kv.unknown_keys({"variant", "r0", "M", "T", "theta0", "eps1",
                                        "quadrature_points", "R", "points", "R_lo", "R_hi"});
  if (!unknown.empty()) throw ParseError("unknown parameter `" + unknown.front() + "`");
  profile = ProfileConfig::from_key_values(kv);
  if (auto v = kv.get_double("R")) big_r = *v;
  if (auto v = kv.get_int("points")) points = *v;
  if (auto v = kv.get_double("R_lo")) r_lo = *v;
  if (auto v = kv.get_double("R_hi")) r_hi = *v;
}

nlohmann::json RunConfig::to_json() const {
  json j;
  j["params_file"] = params_path ? json(params_path->generic_string()) : json(nullptr);
  j["variant"] = handlepsc::to_string(profile.variant);
  j["r0"] = profile.r0;
  j["M"] = profile.big_m;
  j["T"] = profile.half_width;
  j["theta0"] = profile.theta0;
  j["eps1"] = profile.eps1_or_default();
  j["quadrature_points"] = profile.quadrature_points;
  j["R"] = big_r;
  j["points"] = points;
  j["R_lo"] = r_lo;
  j["R_hi"] = r_hi;
  j["grid"] = {grid_theta, grid_t};
  j["seed"] = seed;
  j["heatmap"] = heatmap;
  if (config_path) j["config_file"] = config_path->generic_string();
  if (inject_fault) j["inject_fault"] = *inject_fault;
  return j;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive scalar curvature checks for 2-handle metrics", "handlepsc"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string params, config, out_dir, grid = "200x200", fault;

  const std::array<std::pair<const char*, const char*>, 6> commands = {{
      {"verify-curvature", "Diff closed-form curvature against the numeric pipeline"},
      {"psc-scan", "Scan scalar curvature over the (theta, t) grid"},
      {"find-r", "Bisect for the smallest R with a positive scan"},
      {"regions", "Search the epsilon ladder for the region inequality"},
      {"config-check", "Decide applicability for a circle/arc configuration"},
      {"step-check", "Report the step normalization and limit ratios"},
  }};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("--params", params, "Flat key = value parameter file");
    sub->add_option("--grid", grid, "Scan resolution NxM (theta x t)");
    sub->add_option("--seed", cfg.seed, "Seed for sampled chart points");
    sub->add_option("--out", out_dir, "Directory for report.json and scan outputs");
    sub->add_flag("--heatmap", cfg.heatmap, "Also write heatmap.ppm (psc-scan)");
    if (std::string_view(name) == "config-check") {
      sub->add_option("--config", config, "Circle/arc configuration file");
    }
    if (std::string_view(name) == "verify-curvature") {
      sub->add_option("--inject-fault", fault)->group("");
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    cfg.subcommand = app.get_subcommands().front()->get_name();
    if (!params.empty()) cfg.params_path = params;
    if (!config.empty()) cfg.config_path = config;
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (!fault.empty()) cfg.inject_fault = fault;
    std::tie(cfg.grid_theta, cfg.grid_t) = parse_grid(grid);
    if (cfg.heatmap && !cfg.out_dir) throw UsageError("--heatmap needs --out <dir>");
    cfg.load_params();
    prepare_out_dir(cfg);

    json j = record(cfg);
    int code = kExitUsage;
    if (cfg.subcommand == "verify-curvature") code = cmd_verify_curvature(cfg, j);
    else if (cfg.subcommand == "psc-scan") code = cmd_psc_scan(cfg, j);
    else if (cfg.subcommand == "find-r") code = cmd_find_r(cfg, j);
    else if (cfg.subcommand == "regions") code = cmd_regions(cfg, j);
    else if (cfg.subcommand == "config-check") code = cmd_config_check(cfg, j);
    else if (cfg.subcommand == "step-check") code = cmd_step_check(cfg, j);

    const std::string line = json_line(j);
    if (cfg.out_dir) write_text(*cfg.out_dir / "report.json", line + "\n");
    out << line << '\n';
    if (code == kExitFail && j.contains("failing") && !j["failing"].empty()) {
      err << "tolerance breach: " << j["failing"].front().get<std::string>() << '\n';
    }
    return code;
  } catch (const std::exception& e) {
    err << "handlepsc " << cfg.subcommand << ": " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace handlepsc
