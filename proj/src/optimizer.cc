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

#include "satrelay/optimizer.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "satrelay/errors.h"

namespace satrelay {

InfeasibleError::InfeasibleError(double satellite_min_time,
                                 double relay_min_time, double deadline)
    : std::runtime_error(
          "deadline " + std::to_string(deadline) +
          " s is shorter than the minimum hop times " +
          std::to_string(satellite_min_time) + " s + " +
          std::to_string(relay_min_time) + " s"),
      satellite_min_time_(satellite_min_time),
      relay_min_time_(relay_min_time),
      deadline_(deadline) {}

namespace {

constexpr double kLn2 = 0.69314718055994530942;

void RequirePositive(double v, const char* what) {
  if (!(std::isfinite(v) && v > 0.0)) {
    throw DomainError(std::string(what) + " must be positive and finite");
  }
}

// 1 - (1 - y) e^y with y = x ln 2, increasing from 0 at x = 0. The series
// sum_{n>=2} (n-1) y^n / n! avoids the cancellation near zero.
double StationarityGap(double x) {
  const double y = x * kLn2;
  if (y < 0.5) {
    double term = y;  // y^n / n! at n = 1
    double sum = 0.0;
    for (int n = 2; n < 40; ++n) {
      term *= y / n;
      sum += (n - 1) * term;
      if (term < 1e-18 * sum) break;
    }
    return sum;
  }
  return 1.0 - (1.0 - y) * std::exp(y);
}

// -dT/dlambda of the stationary time at x = bits / (bandwidth * time).
double TimeSlope(double gain, double bits, double bandwidth, double x) {
  return bits / (bandwidth * x * x) * gain /
         (x * kLn2 * kLn2 * std::exp(x * kLn2));
}

struct Hop {
  double gain;
  double bandwidth;
  double floor;    // full-power minimum time
  double ceiling;  // deadline minus the other hop's minimum
};

struct Probe {
  double satellite_time;
  double relay_time;
  double slope;  // -d(total time)/dlambda over hops strictly inside the box
};

Probe Evaluate(const Hop& s, const Hop& r, double bits, double multiplier) {
  Probe p{0.0, 0.0, 0.0};
  auto one = [&](const Hop& hop, double& time) {
    const double t_hat =
        SolveTimeEquation(hop.gain, multiplier, bits, hop.bandwidth);
    time = std::clamp(t_hat, hop.floor, hop.ceiling);
    if (t_hat > hop.floor && t_hat < hop.ceiling) {
      p.slope += TimeSlope(hop.gain, bits, hop.bandwidth,
                           bits / (hop.bandwidth * t_hat));
    }
  };
  one(s, p.satellite_time);
  one(r, p.relay_time);
  return p;
}

// Multiplier above which both hops sit on their full-power floors.
double FloorMultiplier(const Hop& hop, double max_power) {
  const double snr = max_power * hop.gain;
  const double x = std::log1p(snr) / kLn2;
  return ((1.0 + snr) * x * kLn2 - snr) / hop.gain;
}

Allocation Finalize(const LinkBudget& b, const Hop& s, const Hop& r,
                    double satellite_time, double relay_time) {
  // Remove any residual excess over the deadline from the hops above their
  // floors, in proportion to their slack.
  const double excess = satellite_time + relay_time - b.deadline;
  if (excess > 0.0) {
    const double slack_s = satellite_time - s.floor;
    const double slack_r = relay_time - r.floor;
    const double slack = slack_s + slack_r;
    if (slack > 0.0) {
      satellite_time -= excess * slack_s / slack;
      relay_time -= excess * slack_r / slack;
    }
  }
  Allocation a;
  a.satellite_time = std::max(satellite_time, s.floor);
  a.relay_time = std::max(relay_time, r.floor);
  a.satellite_power =
      std::min(RequiredPower(b.payload_bits, b.satellite_bandwidth,
                             b.satellite_gain, a.satellite_time),
               b.satellite_max_power);
  a.relay_power = std::min(RequiredPower(b.payload_bits, b.relay_bandwidth,
                                         b.relay_gain, a.relay_time),
                           b.relay_max_power);
  a.efficiency = b.payload_bits / (a.satellite_power * a.satellite_time +
                                   a.relay_power * a.relay_time);
  a.satellite_at_floor = a.satellite_time <= s.floor * (1.0 + 1e-12);
  a.relay_at_floor = a.relay_time <= r.floor * (1.0 + 1e-12);
  return a;
}

}  // namespace

void LinkBudget::Validate() const {
  RequirePositive(payload_bits, "D_SD");
  RequirePositive(satellite_bandwidth, "B_S");
  RequirePositive(relay_bandwidth, "B_R");
  RequirePositive(deadline, "T_total");
  RequirePositive(satellite_max_power, "P_S_max");
  RequirePositive(relay_max_power, "P_R_max");
  RequirePositive(satellite_gain, "gamma_SR");
  RequirePositive(relay_gain, "gamma_RD");
}

std::string_view StepRuleName(StepRule rule) {
  return rule == StepRule::kDiminishing ? "diminishing" : "curvature";
}

StepRule StepRuleFromName(std::string_view name) {
  if (name == "curvature") return StepRule::kCurvature;
  if (name == "diminishing") return StepRule::kDiminishing;
  throw ConfigError("unknown step rule '" + std::string(name) + "'");
}

double RateGap(double rate, double bandwidth) {
  if (!(rate >= 0.0)) throw DomainError("rate must be >= 0");
  RequirePositive(bandwidth, "bandwidth");
  return std::expm1(rate / bandwidth * kLn2);
}

double MinTime(double bits, double bandwidth, double max_power, double gain) {
  RequirePositive(bits, "payload");
  RequirePositive(bandwidth, "bandwidth");
  const double snr = max_power * gain;
  if (!(snr > 0.0) || !std::isfinite(snr)) {
    throw DomainError("infeasible link: full-power SNR must be positive");
  }
  return bits * kLn2 / (bandwidth * std::log1p(snr));
}

double SolveTimeEquation(double gain, double multiplier, double bits,
                         double bandwidth) {
  RequirePositive(gain, "gain");
  RequirePositive(bits, "payload");
  RequirePositive(bandwidth, "bandwidth");
  if (!(multiplier >= 0.0) || !std::isfinite(multiplier)) {
    throw DomainError("multiplier must be >= 0 and finite");
  }
  if (multiplier == 0.0) return std::numeric_limits<double>::infinity();
  const double target = gain * multiplier;
  double lo = 0.0;
  double hi = 1.0;
  while (StationarityGap(hi) < target) hi *= 2.0;
  for (int i = 0; i < 2000; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (StationarityGap(mid) < target ? lo : hi) = mid;
  }
  const double x = std::fabs(StationarityGap(lo) - target) <
                           std::fabs(StationarityGap(hi) - target)
                       ? lo
                       : hi;
  return bits / (bandwidth * x);
}

double KktTime(double gain, double multiplier, double bits, double bandwidth,
               double max_power) {
  return std::max(SolveTimeEquation(gain, multiplier, bits, bandwidth),
                  MinTime(bits, bandwidth, max_power, gain));
}

double StationarityResidual(double gain, double multiplier, double bits,
                            double bandwidth, double time) {
  const double x = bits / (bandwidth * time);
  return std::fabs(StationarityGap(x) - gain * multiplier);
}

double RequiredPower(double bits, double bandwidth, double gain, double time) {
  return RateGap(bits / time, bandwidth) / gain;
}

double EnergyEfficiency(const LinkBudget& budget, double satellite_time,
                        double relay_time) {
  const double energy =
      RequiredPower(budget.payload_bits, budget.satellite_bandwidth,
                    budget.satellite_gain, satellite_time) *
          satellite_time +
      RequiredPower(budget.payload_bits, budget.relay_bandwidth,
                    budget.relay_gain, relay_time) *
          relay_time;
  return budget.payload_bits / energy;
}

Allocation Optimize(const LinkBudget& budget, const OptimizerOptions& options) {
  budget.Validate();
  const double bits = budget.payload_bits;
  const double deadline = budget.deadline;
  const double floor_s = MinTime(bits, budget.satellite_bandwidth,
                                 budget.satellite_max_power,
                                 budget.satellite_gain);
  const double floor_r = MinTime(bits, budget.relay_bandwidth,
                                 budget.relay_max_power, budget.relay_gain);
  if (floor_s + floor_r > deadline * (1.0 + 1e-12)) {
    throw InfeasibleError(floor_s, floor_r, deadline);
  }
  // Each hop is boxed by the time the other hop leaves over; the optimum
  // lies inside, and the box keeps the zero-multiplier probe finite.
  const Hop s{budget.satellite_gain, budget.satellite_bandwidth, floor_s,
              std::max(floor_s, deadline - floor_r)};
  const Hop r{budget.relay_gain, budget.relay_bandwidth, floor_r,
              std::max(floor_r, deadline - floor_s)};

  // At the smaller of the two multipliers that make a single hop last the
  // whole deadline, both hops sit on their ceilings, so the total time is
  // still too long: a positive lower bracket.
  double lo = std::min(
      StationarityGap(bits / (budget.satellite_bandwidth * deadline)) /
          budget.satellite_gain,
      StationarityGap(bits / (budget.relay_bandwidth * deadline)) /
          budget.relay_gain);
  double hi = std::max(FloorMultiplier(s, budget.satellite_max_power),
                       FloorMultiplier(r, budget.relay_max_power));
  const double phi0 = hi / deadline;

  Allocation best;
  bool have_best = false;
  double multiplier = 0.0;
  bool converged = false;
  int iterations = 0;
  std::vector<double> lambda_trace;
  std::vector<double> efficiency_trace;
  Probe probe{};
  for (int j = 0; j < options.max_iterations; ++j) {
    iterations = j + 1;
    probe = Evaluate(s, r, bits, multiplier);
    const double gap = probe.satellite_time + probe.relay_time - deadline;
    lambda_trace.push_back(multiplier);
    efficiency_trace.push_back(
        EnergyEfficiency(budget, probe.satellite_time, probe.relay_time));
    if (gap <= 0.0) {
      const Allocation candidate =
          Finalize(budget, s, r, probe.satellite_time, probe.relay_time);
      if (!have_best || candidate.efficiency > best.efficiency) {
        best = candidate;
        have_best = true;
      }
    }
    if (std::fabs(gap) <= 1e-15 * deadline) {
      converged = true;
      break;
    }
    double next;
    if (options.step_rule == StepRule::kCurvature) {
      if (multiplier > 0.0) (gap > 0.0 ? lo : hi) = multiplier;
      next = probe.slope > 0.0 ? multiplier + gap / probe.slope : -1.0;
      // The bracket can span many decades, so bisect geometrically.
      if (!(next > lo && next < hi)) next = std::sqrt(lo * hi);
    } else {
      next = multiplier + phi0 / (1.0 + j) * gap;
    }
    next = std::max(0.0, next);
    const double change = std::fabs(next - multiplier);
    multiplier = next;
    if (change < options.tolerance * std::max(1.0, multiplier)) {
      probe = Evaluate(s, r, bits, multiplier);
      converged = true;
      break;
    }
  }

  Allocation out;
  if (converged || !have_best) {
    out = Finalize(budget, s, r, probe.satellite_time, probe.relay_time);
  } else {
    out = best;
  }
  out.multiplier = multiplier;
  // With one hop pinned to its floor the deadline multiplier is any value in
  // an interval; report the one that makes the other hop stationary.
  if (out.satellite_at_floor != out.relay_at_floor) {
    const bool sat_free = out.relay_at_floor;
    const double time = sat_free ? out.satellite_time : out.relay_time;
    const double bandwidth =
        sat_free ? budget.satellite_bandwidth : budget.relay_bandwidth;
    const double gain = sat_free ? budget.satellite_gain : budget.relay_gain;
    out.multiplier = StationarityGap(bits / (bandwidth * time)) / gain;
  }
  out.iterations = iterations;
  out.converged = converged;
  out.lambda_trace = std::move(lambda_trace);
  out.efficiency_trace = std::move(efficiency_trace);
  return out;
}

}  // namespace satrelay
