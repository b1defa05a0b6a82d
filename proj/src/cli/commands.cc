// Copyright 2026 The satrelay Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli/commands.h"

#include <cmath>
#include <limits>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "cli/format.h"
#include "json.hpp"
#include "satrelay/errors.h"
#include "satrelay/rng.h"

namespace satrelay::cli {
namespace {

using nlohmann::ordered_json;

// RNG stream reserved for the optimizer's one-off channel draw, disjoint
// from the trial indices used by the Monte-Carlo estimator.
constexpr std::uint64_t kGainStream = 0xfffffffffffff00dULL;

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

std::string CellText(const ordered_json& v) {
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
  if (v.is_number_integer()) return v.dump();
  if (v.is_number()) return FormatNumber(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

void Flatten(const ordered_json& v, const std::string& prefix,
             std::vector<std::string>& keys, std::vector<std::string>& cells) {
  for (const auto& item : v.items()) {
    const std::string key =
        prefix.empty() ? item.key() : prefix + "." + item.key();
    if (item.value().is_object()) {
      Flatten(item.value(), key, keys, cells);
    } else if (!item.value().is_array()) {
      keys.push_back(key);
      cells.push_back(CellText(item.value()));
    }
  }
}

void Emit(const ordered_json& record, bool csv, std::ostream& out) {
  if (!csv) {
    out << record.dump(2) << '\n';
    return;
  }
  std::vector<std::string> keys;
  std::vector<std::string> cells;
  Flatten(record, "", keys, cells);
  WriteCsvRow(out, keys);
  WriteCsvRow(out, cells);
}

ordered_json OrdersJson(const QuadratureOrders& o, bool interference,
                        bool satellite) {
  ordered_json j = ordered_json::object();
  if (interference) {
    j["G"] = o.g;
    j["H"] = o.h;
    j["J"] = o.j;
  }
  if (satellite) j["Q"] = o.q;
  return j;
}

ordered_json ResultJson(const ProbabilityResult& r, bool interference,
                        bool satellite) {
  ordered_json j;
  j["value"] = r.value;
  j["unclamped"] = r.unclamped;
  j["method"] = std::string(MethodName(r.method));
  j["threshold"] = r.threshold;
  if (r.method == Method::kQuadrature) {
    j["orders"] = OrdersJson(r.orders, interference, satellite);
  }
  if (r.refinement_delta) j["refinement_delta"] = *r.refinement_delta;
  return j;
}

RelayScenario ParseRelayScenario(const std::string& s) {
  if (s == "ni" || s == "non-interference") return RelayScenario::kNonInterference;
  if (s == "is" || s == "interference") return RelayScenario::kInterference;
  throw ConfigError("--scenario: expected ni or is, got '" + s + "'");
}

bool ParseExact(const std::string& method) {
  if (method == "exact") return true;
  if (method == "approx") return false;
  throw ConfigError("--method: expected exact or approx, got '" + method + "'");
}

QuadratureOrders ParseOrders(const std::string& text) {
  std::vector<int> values;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(item, &used);
      if (used != item.size() || v < 1) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("--orders: '" + text + "' is not a positive integer list");
    }
  }
  if (values.size() == 1) return {values[0], values[0], values[0], values[0]};
  if (values.size() == 4) return {values[0], values[1], values[2], values[3]};
  throw ConfigError("--orders: give one value or four (G,H,J,Q)");
}

ProbabilityResult Coverage(const ScenarioConfig& c, RelayScenario scenario,
                           bool exact, bool refine) {
  ValidateConfig(c, scenario == RelayScenario::kInterference);
  if (scenario == RelayScenario::kInterference) {
    return CoverageInterference(c.geometry, InterferenceLink(c), c.gamma_th,
                                c.orders, refine);
  }
  return exact ? CoverageNonInterferenceExact(c.geometry, RelayLink(c), c.gamma_th)
               : CoverageNonInterferenceApprox(c.geometry, RelayLink(c), c.gamma_th);
}

EndToEndResult EndToEnd(const ScenarioConfig& c, RelayScenario scenario,
                        bool exact) {
  ValidateConfig(c, scenario == RelayScenario::kInterference);
  EndToEndInputs in = MakeEndToEndInputs(c, scenario);
  in.exact_coverage = exact;
  return EndToEndOutage(in);
}

ordered_json EndToEndJson(const EndToEndResult& r, RelayScenario scenario) {
  const bool is = scenario == RelayScenario::kInterference;
  ordered_json j;
  j["command"] = "e2e";
  j["scenario"] = std::string(ScenarioName(scenario));
  j["value"] = r.outage.value;
  j["unclamped"] = r.outage.unclamped;
  j["coverage"] = ResultJson(r.coverage, is, false);
  j["satellite_outage"] = ResultJson(r.satellite_outage, false, true);
  return j;
}

double Analytic(const ScenarioConfig& c, McScenario scenario, bool exact) {
  switch (scenario) {
    case McScenario::kCoverageNi:
      return Coverage(c, RelayScenario::kNonInterference, exact, false).value;
    case McScenario::kCoverageIs:
      return Coverage(c, RelayScenario::kInterference, exact, false).value;
    case McScenario::kOutageSr:
      ValidateConfig(c, false);
      return OutageSr(c.geometry, SatelliteLink(c), c.gamma_out, c.orders).value;
    case McScenario::kEndToEndNi:
      return EndToEnd(c, RelayScenario::kNonInterference, exact).outage.value;
    case McScenario::kEndToEndIs:
      return EndToEnd(c, RelayScenario::kInterference, exact).outage.value;
    case McScenario::kRatioCdf:
      ValidateConfig(c, false);
      return InterferenceRatioCdf(c.z, InterferenceLink(c));
  }
  return kNan;
}

McConfig MakeMcConfig(const ScenarioConfig& c, McScenario scenario) {
  McConfig mc;
  mc.trials = c.trials;
  mc.seed = c.seed;
  mc.threads = c.threads;
  mc.scenario = scenario;
  return mc;
}

double Metric(const ScenarioConfig& c, const std::string& metric) {
  if (metric == "coverage-ni") {
    return Coverage(c, RelayScenario::kNonInterference, true, false).value;
  }
  if (metric == "coverage-ni-approx") {
    return Coverage(c, RelayScenario::kNonInterference, false, false).value;
  }
  if (metric == "coverage-is") {
    return Coverage(c, RelayScenario::kInterference, false, false).value;
  }
  if (metric == "outage-sr") {
    return Analytic(c, McScenario::kOutageSr, false);
  }
  if (metric == "e2e-ni") {
    return EndToEnd(c, RelayScenario::kNonInterference, false).outage.value;
  }
  if (metric == "e2e-is") {
    return EndToEnd(c, RelayScenario::kInterference, false).outage.value;
  }
  if (metric == "eta") {
    ValidateConfig(c, c.rd_scenario == RelayScenario::kInterference);
    const LinkBudget budget = MakeLinkBudget(c, ResolveGains(c));
    OptimizerOptions options;
    options.step_rule = c.step_rule;
    try {
      return Optimize(budget, options).efficiency;
    } catch (const InfeasibleError&) {
      return kNan;
    }
  }
  throw ConfigError("--metric: unknown metric '" + metric + "'");
}

int CmdValidate(const ScenarioConfig& c, const std::string& name, bool exact,
                bool csv, std::ostream& out) {
  const McScenario scenario = McScenarioFromName(name);
  const double analytic = Analytic(c, scenario, exact);
  const McEstimate est =
      EstimateProbability(MakeMcConfig(c, scenario), MakeSystemModel(c),
                          {c.gamma_th, c.gamma_out, c.z});
  // Standard error under the analytic value, so a degenerate estimate (all
  // hits or none) still yields a meaningful score.
  const double se = std::sqrt(analytic * (1.0 - analytic) / est.trials);
  double z = 0.0;
  if (se > 0.0) {
    z = (est.mean - analytic) / se;
  } else if (est.mean != analytic) {
    z = std::numeric_limits<double>::infinity();
  }
  const bool pass = std::fabs(z) <= 3.0;
  ordered_json j;
  j["command"] = "validate";
  j["scenario"] = name;
  j["analytic"] = analytic;
  j["mc_mean"] = est.mean;
  j["mc_std_error"] = est.std_error;
  j["z_score"] = std::isfinite(z) ? ordered_json(z) : ordered_json("inf");
  j["trials"] = est.trials;
  j["seed"] = est.seed;
  j["pass"] = pass;
  Emit(j, csv, out);
  return pass ? kExitOk : kExitValidation;
}

int CmdSweep(const ScenarioConfig& c, const std::string& axis, double from,
             double to, int points, bool log_spacing, const std::string& unit,
             const std::vector<std::string>& metrics, std::ostream& out) {
  if (points < 1) throw ConfigError("--points must be >= 1");
  if (log_spacing && !(from > 0.0 && to > 0.0)) {
    throw ConfigError("--log needs positive --from and --to");
  }
  std::vector<std::string> header{axis};
  header.insert(header.end(), metrics.begin(), metrics.end());
  std::vector<std::vector<std::string>> rows;
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double v = log_spacing
                         ? std::exp(std::log(from) + t * (std::log(to) - std::log(from)))
                         : from + t * (to - from);
    ScenarioConfig point = c;
    ApplyOverride(point, axis + "=" + FormatNumber(v) +
                             (unit.empty() ? "" : " " + unit));
    std::vector<std::string> row{FormatNumber(v)};
    for (const std::string& m : metrics) row.push_back(FormatNumber(Metric(point, m)));
    rows.push_back(std::move(row));
  }
  WriteCsvRow(out, header);
  for (const auto& row : rows) WriteCsvRow(out, row);
  return kExitOk;
}

int CmdOptimize(const ScenarioConfig& c, bool csv, std::ostream& out,
                std::ostream& err) {
  ValidateConfig(c, c.rd_scenario == RelayScenario::kInterference);
  const OptimizerGains gains = ResolveGains(c);
  const LinkBudget budget = MakeLinkBudget(c, gains);
  OptimizerOptions options;
  options.step_rule = c.step_rule;

  ordered_json j;
  j["command"] = "optimize";
  j["rd_scenario"] = std::string(ScenarioName(c.rd_scenario));
  j["step_rule"] = std::string(StepRuleName(c.step_rule));
  j["gains"]["gamma_SR"] = gains.satellite_gain;
  j["gains"]["gamma_RD"] = gains.relay_gain;
  j["gains"]["gamma_SR_drawn"] = gains.satellite_drawn;
  j["gains"]["gamma_RD_drawn"] = gains.relay_drawn;
  if (std::isfinite(gains.satellite_distance)) {
    j["gains"]["d0"] = gains.satellite_distance;
  }
  if (std::isfinite(gains.receiver_distance)) {
    j["gains"]["d_i"] = gains.receiver_distance;
  }
  Allocation a;
  try {
    a = Optimize(budget, options);
  } catch (const InfeasibleError& e) {
    j["status"] = "infeasible";
    j["satellite_min_time"] = e.satellite_min_time();
    j["relay_min_time"] = e.relay_min_time();
    j["deadline"] = e.deadline();
    Emit(j, csv, out);
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
  j["status"] = a.converged ? "converged" : "not-converged";
  j["T_S"] = a.satellite_time;
  j["T_R"] = a.relay_time;
  j["P_S"] = a.satellite_power;
  j["P_R"] = a.relay_power;
  j["eta"] = a.efficiency;
  j["multiplier"] = a.multiplier;
  j["satellite_at_floor"] = a.satellite_at_floor;
  j["relay_at_floor"] = a.relay_at_floor;
  j["iterations"] = a.iterations;
  j["lambda_trace"] = a.lambda_trace;
  j["eta_trace"] = a.efficiency_trace;
  Emit(j, csv, out);
  if (!a.converged) {
    err << "warning: multiplier did not converge within "
        << a.iterations << " iterations; reporting the best feasible point\n";
    return kExitFailure;
  }
  return kExitOk;
}

int CmdHistogram(const ScenarioConfig& c, const std::string& name, int bins,
                 bool csv, std::ostream& out) {
  ValidateConfig(c, false);
  const SampledQuantity q = QuantityFromName(name);
  const Histogram h = SampleHistogram(MakeMcConfig(c, McScenario::kCoverageNi),
                                      MakeSystemModel(c), q, bins);
  if (csv) {
    WriteCsvRow(out, {"bin_lo", "bin_hi", "density"});
    for (std::size_t i = 0; i < h.density.size(); ++i) {
      WriteCsvRow(out, {FormatNumber(h.lo + i * h.bin_width),
                        FormatNumber(h.lo + (i + 1) * h.bin_width),
                        FormatNumber(h.density[i])});
    }
    return kExitOk;
  }
  ordered_json j;
  j["command"] = "histogram";
  j["quantity"] = name;
  j["samples"] = h.samples;
  j["seed"] = c.seed;
  j["ks_statistic"] = h.ks_statistic;
  j["lo"] = h.lo;
  j["bin_width"] = h.bin_width;
  j["density"] = h.density;
  out << j.dump(2) << '\n';
  return kExitOk;
}

}  // namespace

OptimizerGains ResolveGains(const ScenarioConfig& c) {
  OptimizerGains g{0.0, 0.0, false, false, kNan, kNan};
  CounterRng rng(c.seed, kGainStream);
  if (c.gamma_sr) {
    g.satellite_gain = *c.gamma_sr;
  } else {
    g.satellite_drawn = true;
    g.satellite_distance =
        c.d0 ? *c.d0 : SampleSatellite(rng, c.geometry).distance;
    const double h_sr = SampleShadowedRician(rng, SatelliteLink(c));
    g.satellite_gain = h_sr / (c.sigma2 * std::pow(g.satellite_distance, c.n1));
  }
  if (c.gamma_rd) {
    g.relay_gain = *c.gamma_rd;
  } else {
    g.relay_drawn = true;
    const ReceiverSample rx = SampleReceiver(rng, c.geometry);
    g.receiver_distance = rx.distance;
    const RicianParams gain_law{c.k_factor, c.omega_r * c.sigma2 / c.p_r, c.n2};
    const double h_rd = SampleRicianPower(rng, gain_law);
    const double path = std::pow(rx.distance, c.n2);
    if (c.rd_scenario == RelayScenario::kInterference) {
      const InterfererSample in = SampleInterferer(rng, c.geometry);
      const double u = InterfererDistance(rx.radius, in.radius, in.angle);
      const double h_id = SampleRayleighPower(rng, c.lambda_i);
      g.relay_gain = h_rd * std::pow(u, c.n2) / (c.p_i * h_id * path);
    } else {
      g.relay_gain = h_rd / (c.sigma2 * path);
    }
  }
  return g;
}

LinkBudget MakeLinkBudget(const ScenarioConfig& c, const OptimizerGains& g) {
  LinkBudget b;
  b.payload_bits = c.d_sd;
  b.satellite_bandwidth = c.b_s;
  b.relay_bandwidth = c.b_r;
  b.deadline = c.t_total;
  b.satellite_max_power = c.p_s_max;
  b.relay_max_power = c.p_r_max;
  b.satellite_gain = g.satellite_gain;
  b.relay_gain = g.relay_gain;
  try {
    b.Validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("optimizer: ") + e.what());
  }
  return b;
}

int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err) {
  CLI::App app{"Coverage, outage and energy-efficiency analysis of a "
               "satellite-relay-ground link"};
  app.name("satrelay");
  app.require_subcommand(0, 1);
  app.fallthrough();

  std::string config_path;
  std::vector<std::string> sets;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> trials;
  std::optional<int> threads;
  std::string orders;
  bool csv = false;
  bool print_config = false;
  app.add_option("-c,--config", config_path, "Scenario JSON file");
  app.add_option("--set", sets, "Override, e.g. --set power.P_S='30 dB'");
  app.add_option("--seed", seed, "Monte-Carlo seed");
  app.add_option("--trials", trials, "Monte-Carlo trials");
  app.add_option("--threads", threads, "Monte-Carlo workers (0 = default)");
  app.add_option("--orders", orders, "Quadrature orders: N or G,H,J,Q");
  app.add_flag("--csv", csv, "Emit CSV instead of JSON");
  app.add_flag("--print-config", print_config,
               "Print the resolved configuration and exit");

  std::string scenario = "ni";
  std::string method = "exact";
  std::string e2e_method = "approx";
  bool refine = false;
  std::optional<double> distance;
  std::string validate_scenario;
  std::string axis;
  std::string unit;
  double from = 0.0;
  double to = 0.0;
  int points = 11;
  bool log_spacing = false;
  std::vector<std::string> metrics;
  std::string quantity;
  int bins = 50;

  CLI::App* coverage = app.add_subcommand("coverage", "Coverage probability");
  coverage->add_option("--scenario", scenario, "ni or is");
  coverage->add_option("--method", method, "exact or approx (ni only)");
  coverage->add_flag("--refine", refine, "Report the change at doubled orders");

  CLI::App* outage = app.add_subcommand("outage", "Satellite-link outage");
  outage->add_option("--distance", distance, "Fixed satellite distance, km");
  outage->add_flag("--refine", refine, "Report the change at doubled orders");

  CLI::App* e2e = app.add_subcommand("e2e", "End-to-end outage");
  e2e->add_option("--scenario", scenario, "ni or is");
  e2e->add_option("--method", e2e_method, "approx or exact (ni hop)");

  CLI::App* validate =
      app.add_subcommand("validate", "Compare analytic and Monte-Carlo values");
  validate->add_option("--scenario", validate_scenario,
                       "coverage-ni, coverage-is, outage-sr, e2e-ni, e2e-is "
                       "or cdf-z")
      ->required();
  validate->add_option("--method", method, "exact or approx (ni hop)");

  CLI::App* sweep = app.add_subcommand("sweep", "Sweep one field, emit CSV");
  sweep->add_option("--axis", axis, "Field such as channel.Omega_R")->required();
  sweep->add_option("--from", from)->required();
  sweep->add_option("--to", to)->required();
  sweep->add_option("--points", points);
  sweep->add_option("--unit", unit, "Unit tag appended to each value");
  sweep->add_flag("--log", log_spacing, "Geometric spacing");
  sweep->add_option("--metric", metrics,
                    "coverage-ni, coverage-ni-approx, coverage-is, outage-sr, "
                    "e2e-ni, e2e-is or eta")
      ->required();

  CLI::App* optimize =
      app.add_subcommand("optimize", "Energy-efficient time/power allocation");
  CLI::App* histogram =
      app.add_subcommand("histogram", "Sampled density with KS statistic");
  histogram->add_option("--quantity", quantity, "d0_sq, lambda_S, lambda_R or Z")
      ->required();
  histogram->add_option("--bins", bins);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    ScenarioConfig config;
    if (!config_path.empty()) config = LoadConfigFile(config_path);
    for (const std::string& s : sets) ApplyOverride(config, s);
    if (seed) config.seed = *seed;
    if (trials) {
      if (*trials < 1) throw ConfigError("--trials must be >= 1");
      config.trials = *trials;
    }
    if (threads) {
      if (*threads < 0) throw ConfigError("--threads must be >= 0");
      config.threads = *threads;
    }
    if (!orders.empty()) config.orders = ParseOrders(orders);

    if (print_config) {
      out << ResolvedConfig(config).dump(2) << '\n';
      return kExitOk;
    }
    if (coverage->parsed()) {
      const RelayScenario s = ParseRelayScenario(scenario);
      const ProbabilityResult r = Coverage(config, s, ParseExact(method), refine);
      ordered_json j;
      j["command"] = "coverage";
      j["scenario"] = std::string(ScenarioName(s));
      j.update(ResultJson(r, s == RelayScenario::kInterference, false));
      Emit(j, csv, out);
      return kExitOk;
    }
    if (outage->parsed()) {
      ValidateConfig(config, false);
      ordered_json j;
      j["command"] = "outage";
      if (distance) {
        j["distance"] = *distance;
        j["value"] = OutageSrConditional(*distance, SatelliteLink(config),
                                         config.gamma_out);
        j["method"] = "conditional";
        j["threshold"] = config.gamma_out;
      } else {
        j.update(ResultJson(OutageSr(config.geometry, SatelliteLink(config),
                                     config.gamma_out, config.orders, refine),
                            false, true));
      }
      Emit(j, csv, out);
      return kExitOk;
    }
    if (e2e->parsed()) {
      const RelayScenario s = ParseRelayScenario(scenario);
      Emit(EndToEndJson(EndToEnd(config, s, ParseExact(e2e_method)), s), csv,
           out);
      return kExitOk;
    }
    if (validate->parsed()) {
      return CmdValidate(config, validate_scenario, ParseExact(method), csv, out);
    }
    if (sweep->parsed()) {
      return CmdSweep(config, axis, from, to, points, log_spacing, unit,
                      metrics, out);
    }
    if (optimize->parsed()) return CmdOptimize(config, csv, out, err);
    if (histogram->parsed()) {
      return CmdHistogram(config, quantity, bins, csv, out);
    }
    err << app.help();
    return kExitConfig;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnsupportedError& e) {
    err << "unsupported: " << e.what() << '\n';
    return kExitConfig;
  } catch (const DomainError& e) {
    err << "invalid input: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InfeasibleError& e) {
    err << "infeasible: " << e.what() << '\n';
    return kExitInfeasible;
  }
}

}  // namespace satrelay::cli
