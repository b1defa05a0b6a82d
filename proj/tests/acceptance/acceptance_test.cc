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

// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.h"
#include "cli/config.h"
#include "satrelay/analytic.h"
#include "satrelay/geometry.h"
#include "satrelay/montecarlo.h"
#include "satrelay/optimizer.h"
#include "satrelay/quadrature.h"
#include "satrelay/rng.h"
#include "satrelay/specfun.h"

namespace satrelay {
namespace {

using cli::ScenarioConfig;

constexpr std::int64_t kTrials = 1000000;
const std::string kScenarios = SATRELAY_SCENARIO_DIR;

ScenarioConfig Load(const std::string& name) {
  return cli::LoadConfigFile(kScenarios + "/" + name);
}

// Collects the failing sub-checks of one criterion.
class Criterion {
 public:
  explicit Criterion(std::string id) : id_(std::move(id)) {}

  void Check(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 8) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  void Note(const std::string& line) { notes_.push_back(line); }

  bool Report() const {
    std::printf("%s %s (%d checks, %d failed)\n", id_.c_str(),
                failed_ == 0 ? "PASS" : "FAIL", checks_, failed_);
    for (const auto& n : notes_) std::printf("    %s\n", n.c_str());
    for (const auto& f : failures_) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
    return failed_ == 0;
  }

 private:
  std::string id_;
  int checks_ = 0;
  int failed_ = 0;
  std::vector<std::string> notes_;
  std::vector<std::string> failures_;
};

std::string Fmt(const char* format, ...) __attribute__((format(printf, 1, 2)));
std::string Fmt(const char* format, ...) {
  char buf[512];
  va_list args;
  va_start(args, format);
  std::vsnprintf(buf, sizeof(buf), format, args);
  va_end(args);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since)
      .count();
}

McEstimate Simulate(const ScenarioConfig& c, McScenario scenario) {
  McConfig mc;
  mc.trials = kTrials;
  mc.seed = c.seed;
  mc.threads = c.threads;
  mc.scenario = scenario;
  return EstimateProbability(mc, cli::MakeSystemModel(c),
                             {c.gamma_th, c.gamma_out, c.z});
}

// Analytic probability versus 1e6 simulated trials.
bool CheckAnalyticVersusSimulation() {
  Criterion ac("AC1");
  struct Case {
    const char* name;
    const char* file;
    McScenario scenario;
    std::function<double(const ScenarioConfig&)> analytic;
  };
  const std::vector<Case> cases = {
      {"coverage-ni exact", "coverage_ni.json", McScenario::kCoverageNi,
       [](const ScenarioConfig& c) {
         return CoverageNonInterferenceExact(c.geometry, cli::RelayLink(c),
                                             c.gamma_th).value;
       }},
      {"coverage-is", "coverage_is.json", McScenario::kCoverageIs,
       [](const ScenarioConfig& c) {
         return CoverageInterference(c.geometry, cli::InterferenceLink(c),
                                     c.gamma_th, c.orders).value;
       }},
      {"outage-sr", "outage_sr.json", McScenario::kOutageSr,
       [](const ScenarioConfig& c) {
         return OutageSr(c.geometry, cli::SatelliteLink(c), c.gamma_out,
                         c.orders).value;
       }},
      {"e2e-ni", "e2e.json", McScenario::kEndToEndNi,
       [](const ScenarioConfig& c) {
         return EndToEndOutage(cli::MakeEndToEndInputs(
                                   c, RelayScenario::kNonInterference))
             .outage.value;
       }},
      {"e2e-is", "e2e.json", McScenario::kEndToEndIs,
       [](const ScenarioConfig& c) {
         return EndToEndOutage(
                    cli::MakeEndToEndInputs(c, RelayScenario::kInterference))
             .outage.value;
       }},
  };
  for (const Case& k : cases) {
    const ScenarioConfig c = Load(k.file);
    const auto start = std::chrono::steady_clock::now();
    const double analytic = k.analytic(c);
    const McEstimate mc = Simulate(c, k.scenario);
    const double elapsed = Seconds(start);
    const double gap = std::abs(analytic - mc.mean);
    const double allowed = std::max(0.01, 3.0 * mc.std_error);
    ac.Note(Fmt("%-18s analytic %.6f  mc %.6f +- %.6f  |gap| %.2e <= %.2e  %.1f s",
                k.name, analytic, mc.mean, mc.std_error, gap, allowed, elapsed));
    ac.Check(gap <= allowed, Fmt("%s agreement", k.name));
    ac.Check(elapsed < 60.0, Fmt("%s runtime %.1f s", k.name, elapsed));
  }
  return ac.Report();
}

double FittedIntegral(const GeometryParams& g, const RicianParams& r,
                      double threshold) {
  const double a = std::sqrt(2.0 * r.k_factor);
  const double scale = 2.0 * (1.0 + r.k_factor) * threshold / r.mean_power;
  AdaptiveOptions opts;
  opts.abs_tol = 1e-13;
  const double v =
      IntegrateAdaptive(
          [&](double x) {
            return x * MarcumQ1Approx(a, std::sqrt(scale * std::pow(x, r.path_loss)));
          },
          g.relay_altitude, std::hypot(g.relay_altitude, g.coverage_radius), opts)
          .value;
  return 2.0 * v / (g.coverage_radius * g.coverage_radius);
}

// Closed-form coverage: exact for the fitted integrand, close to the exact one.
bool CheckClosedFormCoverage() {
  Criterion ac("AC2");
  const ScenarioConfig base = Load("coverage_ni.json");
  double worst_fit = 0.0, worst_exact = 0.0;
  for (double h1 : {5.0, 10.0, 20.0}) {
    for (double l : {10.0, 20.0}) {
      for (double omega_db = 0.0; omega_db <= 60.0; omega_db += 2.5) {
        ScenarioConfig c = base;
        c.geometry.relay_altitude = h1;
        c.geometry.coverage_radius = l;
        c.omega_r = std::pow(10.0, omega_db / 10.0);
        const RicianParams r = cli::RelayLink(c);
        const double closed =
            CoverageNonInterferenceApprox(c.geometry, r, c.gamma_th).value;
        const double fitted = FittedIntegral(c.geometry, r, c.gamma_th);
        const double exact =
            CoverageNonInterferenceExact(c.geometry, r, c.gamma_th).value;
        worst_fit = std::max(worst_fit, std::abs(closed - fitted));
        worst_exact = std::max(worst_exact, std::abs(closed - exact));
        const std::string where =
            Fmt("H1=%g L=%g Omega_R=%g dB", h1, l, omega_db);
        ac.Check(std::abs(closed - fitted) <= 1e-8, "fitted " + where);
        ac.Check(std::abs(closed - exact) <= 0.02, "exact " + where);
      }
    }
  }
  ac.Note(Fmt("worst |closed - fitted integral| %.2e (<= 1e-8)", worst_fit));
  ac.Note(Fmt("worst |closed - exact integral|  %.4f (<= 0.02)", worst_exact));
  return ac.Report();
}

// Satellite distance law: normalisation and agreement with sampled positions.
bool CheckSatelliteDistanceLaw() {
  Criterion ac("AC3");
  const ScenarioConfig base = Load("outage_sr.json");
  for (double h1 : {5.0, 10.0, 20.0}) {
    ScenarioConfig c = base;
    c.geometry.relay_altitude = h1;
    const D0SquaredSupport s = SatelliteSupport(c.geometry);
    AdaptiveOptions opts;
    opts.abs_tol = 1e-10;
    const double mass = IntegrateAdaptive(
        [&](double x) { return D0SquaredPdf(x, c.geometry); }, s.d0_min_sq,
        s.d0_max_sq, opts).value;
    McConfig mc;
    mc.trials = kTrials;
    mc.seed = c.seed;
    const double ks =
        SampleHistogram(mc, cli::MakeSystemModel(c), SampledQuantity::kD0Squared)
            .ks_statistic;
    ac.Note(Fmt("H1=%-4g |mass - 1| %.2e  KS %.5f", h1, std::abs(mass - 1), ks));
    ac.Check(std::abs(mass - 1.0) <= 1e-6, Fmt("mass H1=%g", h1));
    ac.Check(ks < 0.01, Fmt("KS H1=%g", h1));
  }
  return ac.Report();
}

// Ratio law limits and simulation agreement.
bool CheckRatioLaw() {
  Criterion ac("AC4");
  for (double k : {0.01, 0.1, 1.0}) {
    const auto ip = InterferenceParams::FromRatio(k, 1.0, 2.0);
    const double low = InterferenceRatioCdf(1e-8, ip);
    const double high = InterferenceRatioCdf(1e8, ip);
    ac.Note(Fmt("K=%-4g F(1e-8) %.2e  |F(1e8) - 1| %.2e", k, low, std::abs(high - 1)));
    ac.Check(low < 1e-6, Fmt("lower limit K=%g", k));
    ac.Check(std::abs(high - 1.0) < 1e-6, Fmt("upper limit K=%g", k));
  }
  // Unit relay gain mean and a rate ratio of 2 with all powers at 1 W.
  SystemModel model;
  model.relay = {0.1, 1.0, 2.0};
  model.relay_power = model.interferer_power = model.noise_power = 1.0;
  model.interferer_rate = 2.0;
  McConfig mc;
  mc.trials = kTrials;
  mc.seed = 20240610;
  mc.scenario = McScenario::kRatioCdf;
  Thresholds th;
  th.ratio = 1.5;
  const McEstimate est = EstimateProbability(mc, model, th);
  const double p =
      InterferenceRatioCdf(1.5, InterferenceParams::FromRatio(0.1, 1.0, 2.0));
  const double se = std::sqrt(p * (1 - p) / kTrials);
  ac.Note(Fmt("F(1.5) %.6f  mc %.6f  z %.2f", p, est.mean, (est.mean - p) / se));
  ac.Check(std::abs(est.mean - p) <= 3 * se, "simulation agreement");
  return ac.Report();
}

// Quadrature sums barely move when the orders double.
bool CheckQuadratureRefinement() {
  Criterion ac("AC5");
  const ScenarioConfig is = Load("coverage_is.json");
  const InterferenceParams ip = cli::InterferenceLink(is);
  for (double x_db : {-10.0, 0.0, 10.0}) {
    const double x = std::pow(10.0, x_db / 10.0);
    const double base = SirCdf(x, is.geometry, ip, is.orders);
    const double fine = SirCdf(x, is.geometry, ip, is.orders.Doubled());
    ac.Note(Fmt("SIR law at %g dB: %.6f -> %.6f", x_db, base, fine));
    ac.Check(std::abs(base - fine) < 1e-3, Fmt("SIR law at %g dB", x_db));
  }
  for (const char* file : {"outage_sr.json", "e2e.json"}) {
    const ScenarioConfig c = Load(file);
    const ProbabilityResult r =
        OutageSr(c.geometry, cli::SatelliteLink(c), c.gamma_out, c.orders, true);
    ac.Note(Fmt("satellite outage (%s): %.6f, delta %.2e", file, r.value,
                *r.refinement_delta));
    ac.Check(*r.refinement_delta < 1e-3, Fmt("satellite outage %s", file));
  }
  return ac.Report();
}

// Checks that f over an increasing grid moves in one direction.
void CheckTrend(Criterion& ac, const std::string& name, int points,
                const std::function<double(int)>& f, bool increasing) {
  double prev = f(0);
  int violations = 0;
  for (int i = 1; i < points; ++i) {
    const double v = f(i);
    const bool ok = increasing ? v >= prev - 1e-9 : v <= prev + 1e-9;
    if (!ok) ++violations;
    prev = v;
  }
  ac.Check(violations == 0, Fmt("%s: %d violations", name.c_str(), violations));
  ac.Note(Fmt("%-34s %s over %d points, %d violations", name.c_str(),
              increasing ? "non-decreasing" : "non-increasing", points,
              violations));
}

bool CheckMonotoneTrends() {
  Criterion ac("AC6");
  constexpr int kPoints = 12;
  const ScenarioConfig ni = Load("coverage_ni.json");
  const ScenarioConfig is = Load("coverage_is.json");
  const ScenarioConfig sr = Load("outage_sr.json");
  auto cov_ni = [&](ScenarioConfig c) {
    return CoverageNonInterferenceExact(c.geometry, cli::RelayLink(c), c.gamma_th)
        .value;
  };
  auto cov_is = [&](ScenarioConfig c) {
    return CoverageInterference(c.geometry, cli::InterferenceLink(c), c.gamma_th,
                                c.orders).value;
  };
  auto out_sr = [&](ScenarioConfig c) {
    return OutageSr(c.geometry, cli::SatelliteLink(c), c.gamma_out, c.orders)
        .value;
  };
  auto db = [](double v) { return std::pow(10.0, v / 10.0); };

  CheckTrend(ac, "coverage-ni vs threshold", kPoints, [&](int i) {
    ScenarioConfig c = ni;
    c.gamma_th = db(-15.0 + 3.0 * i);
    return cov_ni(c);
  }, false);
  CheckTrend(ac, "coverage-ni vs H1", kPoints, [&](int i) {
    ScenarioConfig c = ni;
    c.geometry.relay_altitude = 1.0 + 4.0 * i;
    return cov_ni(c);
  }, false);
  CheckTrend(ac, "coverage-ni vs L", kPoints, [&](int i) {
    ScenarioConfig c = ni;
    c.geometry.coverage_radius = 2.0 + 4.0 * i;
    return cov_ni(c);
  }, false);
  CheckTrend(ac, "coverage-is vs threshold", kPoints, [&](int i) {
    ScenarioConfig c = is;
    c.gamma_th = db(-15.0 + 3.0 * i);
    return cov_is(c);
  }, false);
  CheckTrend(ac, "coverage-is vs H1", kPoints, [&](int i) {
    ScenarioConfig c = is;
    c.geometry.relay_altitude = 1.0 + 4.0 * i;
    return cov_is(c);
  }, false);
  CheckTrend(ac, "coverage-is vs L", kPoints, [&](int i) {
    ScenarioConfig c = is;
    c.geometry.coverage_radius = 1.0 + 2.0 * i;
    return cov_is(c);
  }, false);
  CheckTrend(ac, "coverage-is vs T_I", kPoints, [&](int i) {
    ScenarioConfig c = is;
    c.geometry.interferer_radius = 30.0 + 5.0 * i;
    return cov_is(c);
  }, true);
  CheckTrend(ac, "outage-sr vs Psi", kPoints, [&](int i) {
    ScenarioConfig c = sr;
    c.geometry.apex_angle = M_PI / 12 + (M_PI / 2 - M_PI / 12) * i / (kPoints - 1);
    return out_sr(c);
  }, true);
  CheckTrend(ac, "outage-sr vs threshold", kPoints, [&](int i) {
    ScenarioConfig c = sr;
    c.gamma_out = db(-10.0 + 2.0 * i);
    return out_sr(c);
  }, true);
  CheckTrend(ac, "outage-sr vs Omega", kPoints, [&](int i) {
    ScenarioConfig c = sr;
    c.omega = 0.2 + 0.4 * i;
    return out_sr(c);
  }, false);
  CheckTrend(ac, "outage-sr vs P_S", kPoints, [&](int i) {
    ScenarioConfig c = sr;
    c.p_s = db(20.0 + 2.0 * i);
    return out_sr(c);
  }, false);
  const ScenarioConfig opt = Load("optimizer.json");
  const cli::OptimizerGains gains = cli::ResolveGains(opt);
  CheckTrend(ac, "efficiency vs deadline", kPoints, [&](int i) {
    ScenarioConfig c = opt;
    c.t_total = 0.3 + 0.25 * i;
    return Optimize(cli::MakeLinkBudget(c, gains)).efficiency;
  }, true);
  return ac.Report();
}

double Uniform(CounterRng& rng, double lo, double hi) {
  return lo + (hi - lo) * rng.Uniform();
}

double LogUniform(CounterRng& rng, double lo, double hi) {
  return std::exp(Uniform(rng, std::log(lo), std::log(hi)));
}

LinkBudget RandomFeasibleBudget(CounterRng& rng) {
  for (;;) {
    LinkBudget b;
    b.payload_bits = LogUniform(rng, 1e5, 1e7);
    b.satellite_bandwidth = LogUniform(rng, 1e5, 1e7);
    b.relay_bandwidth = LogUniform(rng, 1e5, 1e7);
    b.deadline = Uniform(rng, 0.2, 3.0);
    b.satellite_max_power = Uniform(rng, 1.0, 100.0);
    b.relay_max_power = Uniform(rng, 0.5, 20.0);
    b.satellite_gain = LogUniform(rng, 1e-2, 1e3);
    b.relay_gain = LogUniform(rng, 1e-2, 1e4);
    const double fs = MinTime(b.payload_bits, b.satellite_bandwidth,
                              b.satellite_max_power, b.satellite_gain);
    const double fr = MinTime(b.payload_bits, b.relay_bandwidth,
                              b.relay_max_power, b.relay_gain);
    if (fs + fr < b.deadline) return b;
  }
}

struct OptimizerCheck {
  bool better;
  bool feasible;
  bool stationary;
  bool settled;
  double margin;  // eta* - best random eta, relative
};

OptimizerCheck CheckInstance(const LinkBudget& b, CounterRng& rng) {
  const Allocation a = Optimize(b);
  const double fs = MinTime(b.payload_bits, b.satellite_bandwidth,
                            b.satellite_max_power, b.satellite_gain);
  const double fr = MinTime(b.payload_bits, b.relay_bandwidth,
                            b.relay_max_power, b.relay_gain);
  double best = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double ts = Uniform(rng, fs, b.deadline - fr);
    const double tr = Uniform(rng, fr, b.deadline - ts);
    best = std::max(best, EnergyEfficiency(b, ts, tr));
  }
  const double tol = 1e-6;
  const bool feasible =
      a.satellite_time + a.relay_time <= b.deadline * (1 + tol) &&
      a.satellite_time >= fs * (1 - tol) && a.relay_time >= fr * (1 - tol) &&
      a.satellite_power <= b.satellite_max_power * (1 + tol) &&
      a.relay_power <= b.relay_max_power * (1 + tol) &&
      b.satellite_bandwidth * a.satellite_time *
              std::log2(1 + a.satellite_power * b.satellite_gain) >=
          b.payload_bits * (1 - tol) &&
      b.relay_bandwidth * a.relay_time *
              std::log2(1 + a.relay_power * b.relay_gain) >=
          b.payload_bits * (1 - tol);
  bool stationary = true;
  if (!a.satellite_at_floor) {
    stationary &= StationarityResidual(b.satellite_gain, a.multiplier,
                                       b.payload_bits, b.satellite_bandwidth,
                                       a.satellite_time) <= 1e-8;
  }
  if (!a.relay_at_floor) {
    stationary &= StationarityResidual(b.relay_gain, a.multiplier,
                                       b.payload_bits, b.relay_bandwidth,
                                       a.relay_time) <= 1e-8;
  }
  return {a.efficiency >= best - 1e-6, feasible, stationary,
          a.converged && a.iterations <= 20, (a.efficiency - best) / best};
}

bool CheckOptimizer() {
  Criterion ac("AC7");
  CounterRng rng(20240611, 0);
  std::vector<LinkBudget> budgets;
  for (int i = 0; i < 100; ++i) budgets.push_back(RandomFeasibleBudget(rng));
  const ScenarioConfig ref = Load("optimizer.json");
  budgets.push_back(cli::MakeLinkBudget(ref, cli::ResolveGains(ref)));
  double worst_margin = INFINITY;
  int max_iterations = 0;
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const OptimizerCheck r = CheckInstance(budgets[i], rng);
    const std::string tag = i + 1 == budgets.size() ? "reference" : Fmt("#%zu", i);
    ac.Check(r.better, "random search beats " + tag);
    ac.Check(r.feasible, "constraints " + tag);
    ac.Check(r.stationary, "stationarity " + tag);
    ac.Check(r.settled, "trace length " + tag);
    worst_margin = std::min(worst_margin, r.margin);
    max_iterations = std::max(max_iterations, Optimize(budgets[i]).iterations);
  }
  ac.Note(Fmt("101 instances, smallest relative lead over 1e5 random allocations %.2e",
              worst_margin));
  ac.Note(Fmt("longest dual trace %d iterations", max_iterations));
  return ac.Report();
}

std::string RunCli(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::RunCli(args, out, err);
  return Fmt("exit %d\n", code) + out.str() + err.str();
}

bool CheckDeterminism() {
  Criterion ac("AC8");
  const std::string e2e = kScenarios + "/e2e.json";
  const std::string opt = kScenarios + "/optimizer.json";
  const std::string sr = kScenarios + "/outage_sr.json";
  const std::vector<std::vector<std::string>> commands = {
      {"-c", e2e, "coverage", "--scenario", "is"},
      {"-c", e2e, "e2e", "--scenario", "ni"},
      {"-c", e2e, "--csv", "outage", "--refine"},
      {"-c", e2e, "--trials", "200000", "validate", "--scenario", "e2e-is"},
      {"-c", e2e, "--trials", "200000", "validate", "--scenario", "coverage-ni"},
      {"-c", sr, "--trials", "100000", "histogram", "--quantity", "d0_sq"},
      {"-c", opt, "optimize"},
      {"-c", opt, "sweep", "--axis", "optimizer.T_total", "--from", "0.5",
       "--to", "2", "--metric", "eta"},
  };
  for (const auto& cmd : commands) {
    std::string label;
    for (const auto& a : cmd) label += (a.find('/') == std::string::npos ? a : "<file>") + " ";
    const std::string first = RunCli(cmd);
    ac.Check(first == RunCli(cmd), "repeat: " + label);
    for (const char* threads : {"1", "3", "8"}) {
      std::vector<std::string> with = {"--threads", threads};
      with.insert(with.end(), cmd.begin(), cmd.end());
      ac.Check(first == RunCli(with), Fmt("threads %s: ", threads) + label);
    }
  }
  ac.Note(Fmt("%zu commands, each repeated and rerun on 1, 3 and 8 workers",
              commands.size()));
  return ac.Report();
}

}  // namespace
}  // namespace satrelay

int main() {
  using namespace satrelay;
  bool ok = true;
  ok &= CheckAnalyticVersusSimulation();
  ok &= CheckClosedFormCoverage();
  ok &= CheckSatelliteDistanceLaw();
  ok &= CheckRatioLaw();
  ok &= CheckQuadratureRefinement();
  ok &= CheckMonotoneTrends();
  ok &= CheckOptimizer();
  ok &= CheckDeterminism();
  std::printf("%s\n", ok ? "ALL PASS" : "SOME CRITERIA FAILED");
  return ok ? 0 : 1;
}
