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


// Time and power allocation maximising delivered bits per joule over the
// two hops, solved through the dual of the total-time constraint.

#ifndef SATRELAY_OPTIMIZER_H_
#define SATRELAY_OPTIMIZER_H_

#include <string_view>
#include <vector>

namespace satrelay {

struct LinkBudget {
  double payload_bits = 1e6;
  double satellite_bandwidth = 1e6;  // Hz
  double relay_bandwidth = 1e6;
  double deadline = 1.0;  // s
  double satellite_max_power = 50.0;  // W
  double relay_max_power = 10.0;
  // Power-normalised channel gains (1/W), path loss and noise included.
  double satellite_gain = 1.0;
  double relay_gain = 1.0;

  void Validate() const;
};

enum class StepRule {
  // Step 1/kappa where kappa is the local slope of the total time in the
  // multiplier, safeguarded by bisection on a bracketing interval.
  kCurvature,
  // phi0 / (1 + j) with phi0 scaled to the deadline.
  kDiminishing,
};

std::string_view StepRuleName(StepRule rule);
StepRule StepRuleFromName(std::string_view name);

struct OptimizerOptions {
  StepRule step_rule = StepRule::kCurvature;
  int max_iterations = 10000;
  double tolerance = 1e-9;  // on the multiplier change, relative above 1
};

struct Allocation {
  double satellite_time = 0.0;
  double relay_time = 0.0;
  double satellite_power = 0.0;
  double relay_power = 0.0;
  double efficiency = 0.0;  // bits per joule
  double multiplier = 0.0;
  bool satellite_at_floor = false;
  bool relay_at_floor = false;
  int iterations = 0;
  bool converged = false;
  std::vector<double> lambda_trace;
  std::vector<double> efficiency_trace;
};

// 2^(x/B) - 1: the power factor that carries rate x over bandwidth B.
double RateGap(double rate, double bandwidth);

// Shortest time to carry `bits` at full power.
double MinTime(double bits, double bandwidth, double max_power, double gain);

// Unconstrained stationary time of one hop for a given multiplier; +inf
// when the multiplier is zero.
double SolveTimeEquation(double gain, double multiplier, double bits,
                         double bandwidth);

// Stationary time floored at the full-power minimum.
double KktTime(double gain, double multiplier, double bits, double bandwidth,
               double max_power);

// |(1 - x ln2) 2^x - (1 - gain * multiplier)| at x = bits / (bandwidth * time).
double StationarityResidual(double gain, double multiplier, double bits,
                            double bandwidth, double time);

// Power needed to carry `bits` in `time`.
double RequiredPower(double bits, double bandwidth, double gain, double time);

// Bits per joule of a time split, with powers implied by the rate
// constraints.
double EnergyEfficiency(const LinkBudget& budget, double satellite_time,
                        double relay_time);

// Throws InfeasibleError when the two minimum times exceed the deadline.
Allocation Optimize(const LinkBudget& budget,
                    const OptimizerOptions& options = {});

}  // namespace satrelay

#endif  // SATRELAY_OPTIMIZER_H_
