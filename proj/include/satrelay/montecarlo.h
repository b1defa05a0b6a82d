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


// Monte-Carlo simulation of every analytic quantity. Trial t always draws
// from CounterRng(seed, t), so estimates do not depend on the worker count.

#ifndef SATRELAY_MONTECARLO_H_
#define SATRELAY_MONTECARLO_H_

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "satrelay/channels.h"
#include "satrelay/geometry.h"

namespace satrelay {

enum class McScenario {
  kCoverageNi,
  kCoverageIs,
  kOutageSr,
  kEndToEndNi,
  kEndToEndIs,
  kRatioCdf,
};

std::string_view McScenarioName(McScenario scenario);
// Throws ConfigError for an unknown name.
McScenario McScenarioFromName(std::string_view name);

struct McConfig {
  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;  // 0 picks DefaultWorkerCount()
  McScenario scenario = McScenario::kCoverageNi;
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t trials = 0;
  std::int64_t hits = 0;
  std::uint64_t seed = 0;
};

// Physical parameters shared by all scenarios.
struct SystemModel {
  GeometryParams geometry;
  ShadowedRicianParams satellite;
  RicianParams relay;  // mean_power is the mean received SNR
  double interferer_rate = 1.0;
  double relay_power = 1.0;
  double interferer_power = 1.0;
  double noise_power = 1.0;
  // Pins the satellite distance instead of sampling the cone shell.
  std::optional<double> fixed_satellite_distance;
};

// Linear thresholds; `ratio` is the point at which the power-ratio CDF is
// estimated.
struct Thresholds {
  double coverage = 1.0;
  double outage = 1.0;
  double ratio = 1.0;
};

// Bernoulli estimate of the scenario's probability: coverage for the
// coverage scenarios, outage for the others, P{Z <= ratio} for kRatioCdf.
McEstimate EstimateProbability(const McConfig& config,
                               const SystemModel& model,
                               const Thresholds& thresholds);

enum class SampledQuantity { kD0Squared, kLambdaS, kLambdaR, kRatioZ };

std::string_view QuantityName(SampledQuantity quantity);
SampledQuantity QuantityFromName(std::string_view name);

struct Histogram {
  double lo = 0.0;
  double bin_width = 0.0;
  std::vector<double> density;  // normalised by the full sample count
  double ks_statistic = 0.0;    // against the analytic CDF
  std::int64_t samples = 0;
};

// Needs at least 1e4 trials.
Histogram SampleHistogram(const McConfig& config, const SystemModel& model,
                          SampledQuantity quantity, int bins = 50);

// Kolmogorov-Smirnov distance between sorted samples and a CDF.
template <typename Cdf>
double KsStatistic(const std::vector<double>& sorted, Cdf&& cdf) {
  const double n = static_cast<double>(sorted.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = cdf(sorted[i]);
    worst = std::max(worst, std::max(f - i / n, (i + 1) / n - f));
  }
  return worst;
}

// SATRELAY_THREADS when set to a positive integer, else the hardware count.
int DefaultWorkerCount();

}  // namespace satrelay

#endif  // SATRELAY_MONTECARLO_H_
