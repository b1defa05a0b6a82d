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

#include "satrelay/montecarlo.h"

#include <cmath>
#include <cstdlib>
#include <string>
#include <thread>

#include "satrelay/analytic.h"
#include "satrelay/errors.h"

namespace satrelay {
namespace {

struct ScenarioEntry {
  McScenario scenario;
  std::string_view name;
};

constexpr ScenarioEntry kScenarios[] = {
    {McScenario::kCoverageNi, "coverage-ni"},
    {McScenario::kCoverageIs, "coverage-is"},
    {McScenario::kOutageSr, "outage-sr"},
    {McScenario::kEndToEndNi, "e2e-ni"},
    {McScenario::kEndToEndIs, "e2e-is"},
    {McScenario::kRatioCdf, "cdf-z"},
};

struct QuantityEntry {
  SampledQuantity quantity;
  std::string_view name;
};

constexpr QuantityEntry kQuantities[] = {
    {SampledQuantity::kD0Squared, "d0_sq"},
    {SampledQuantity::kLambdaS, "lambda_S"},
    {SampledQuantity::kLambdaR, "lambda_R"},
    {SampledQuantity::kRatioZ, "Z"},
};

// Runs body(begin, end) over contiguous trial blocks on `workers` threads.
template <typename Body>
void ParallelBlocks(std::int64_t trials, int workers, Body&& body) {
  workers = static_cast<int>(
      std::max<std::int64_t>(1, std::min<std::int64_t>(workers, trials)));
  if (workers == 1) {
    body(0, trials, 0);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    const std::int64_t begin = trials * w / workers;
    const std::int64_t end = trials * (w + 1) / workers;
    pool.emplace_back([&body, begin, end, w] { body(begin, end, w); });
  }
  for (std::thread& t : pool) t.join();
}

void CheckModel(const McConfig& config, const SystemModel& model,
                bool interference) {
  if (config.trials < 1) throw ConfigError("trials must be >= 1");
  try {
    model.geometry.Validate(interference);
    model.relay.Validate();
    if (interference) {
      if (model.relay.path_loss != 2.0) {
        throw DomainError("interference scenarios need n2 = 2");
      }
      InterferenceParams::Make(model.relay, model.interferer_rate,
                               model.relay_power, model.interferer_power,
                               model.noise_power);
    }
  } catch (const DomainError& e) {
    throw ConfigError(std::string("scenario ") +
                      std::string(McScenarioName(config.scenario)) + ": " +
                      e.what());
  }
}

RicianParams RelayGainLaw(const SystemModel& model) {
  return {model.relay.k_factor,
          model.relay.mean_power * model.noise_power / model.relay_power,
          model.relay.path_loss};
}

bool NiCovered(CounterRng& rng, const SystemModel& model, double threshold) {
  const ReceiverSample rx = SampleReceiver(rng, model.geometry);
  const double snr = SampleRicianPower(rng, model.relay) /
                     std::pow(rx.distance, model.relay.path_loss);
  return snr >= threshold;
}

bool IsCovered(CounterRng& rng, const SystemModel& model,
               const RicianParams& gain_law, double threshold) {
  const ReceiverSample rx = SampleReceiver(rng, model.geometry);
  const InterfererSample in = SampleInterferer(rng, model.geometry);
  const double u = InterfererDistance(rx.radius, in.radius, in.angle);
  const double signal = model.relay_power * SampleRicianPower(rng, gain_law) /
                        (rx.distance * rx.distance);
  const double interference =
      model.interferer_power * SampleRayleighPower(rng, model.interferer_rate) /
      (u * u);
  return signal >= threshold * interference;
}

double SatelliteSnr(CounterRng& rng, const SystemModel& model) {
  const double d0 = model.fixed_satellite_distance
                        ? *model.fixed_satellite_distance
                        : SampleSatellite(rng, model.geometry).distance;
  return model.satellite.transmit_snr *
         SampleShadowedRician(rng, model.satellite) /
         std::pow(d0, model.satellite.path_loss);
}

double RatioSample(CounterRng& rng, const SystemModel& model,
                   const RicianParams& gain_law) {
  const double x = SampleRicianPower(rng, gain_law);
  const double y = SampleRayleighPower(rng, model.interferer_rate);
  return model.relay_power * x / (model.interferer_power * y);
}

bool Trial(CounterRng& rng, McScenario scenario, const SystemModel& model,
           const RicianParams& gain_law, const Thresholds& th) {
  switch (scenario) {
    case McScenario::kCoverageNi:
      return NiCovered(rng, model, th.coverage);
    case McScenario::kCoverageIs:
      return IsCovered(rng, model, gain_law, th.coverage);
    case McScenario::kOutageSr:
      return SatelliteSnr(rng, model) < th.outage;
    case McScenario::kEndToEndNi: {
      const bool sr_out = SatelliteSnr(rng, model) < th.outage;
      const bool covered = NiCovered(rng, model, th.coverage);
      return sr_out || !covered;
    }
    case McScenario::kEndToEndIs: {
      const bool sr_out = SatelliteSnr(rng, model) < th.outage;
      const bool covered = IsCovered(rng, model, gain_law, th.coverage);
      return sr_out || !covered;
    }
    case McScenario::kRatioCdf:
      return RatioSample(rng, model, gain_law) <= th.ratio;
  }
  return false;
}

int Workers(const McConfig& config) {
  return config.threads > 0 ? config.threads : DefaultWorkerCount();
}

}  // namespace

std::string_view McScenarioName(McScenario scenario) {
  for (const auto& e : kScenarios) {
    if (e.scenario == scenario) return e.name;
  }
  return "unknown";
}

McScenario McScenarioFromName(std::string_view name) {
  for (const auto& e : kScenarios) {
    if (e.name == name) return e.scenario;
  }
  throw ConfigError("unknown scenario '" + std::string(name) + "'");
}

std::string_view QuantityName(SampledQuantity quantity) {
  for (const auto& e : kQuantities) {
    if (e.quantity == quantity) return e.name;
  }
  return "unknown";
}

SampledQuantity QuantityFromName(std::string_view name) {
  for (const auto& e : kQuantities) {
    if (e.name == name) return e.quantity;
  }
  throw ConfigError("unknown histogram quantity '" + std::string(name) + "'");
}

int DefaultWorkerCount() {
  if (const char* env = std::getenv("SATRELAY_THREADS")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 1024) {
      return static_cast<int>(v);
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

McEstimate EstimateProbability(const McConfig& config,
                               const SystemModel& model,
                               const Thresholds& thresholds) {
  const bool interference = config.scenario == McScenario::kCoverageIs ||
                            config.scenario == McScenario::kEndToEndIs;
  CheckModel(config, model, interference);
  const RicianParams gain_law = RelayGainLaw(model);
  const int workers = Workers(config);
  std::vector<std::int64_t> hits(workers, 0);
  ParallelBlocks(config.trials, workers,
                 [&](std::int64_t begin, std::int64_t end, int w) {
                   std::int64_t local = 0;
                   for (std::int64_t t = begin; t < end; ++t) {
                     CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
                     local += Trial(rng, config.scenario, model, gain_law,
                                    thresholds);
                   }
                   hits[w] = local;
                 });
  McEstimate est;
  est.trials = config.trials;
  est.seed = config.seed;
  for (std::int64_t h : hits) est.hits += h;
  est.mean = static_cast<double>(est.hits) / config.trials;
  est.std_error = std::sqrt(est.mean * (1.0 - est.mean) / config.trials);
  return est;
}

Histogram SampleHistogram(const McConfig& config, const SystemModel& model,
                          SampledQuantity quantity, int bins) {
  if (config.trials < 10000) {
    throw ConfigError("histograms need at least 1e4 trials");
  }
  if (bins < 1) throw ConfigError("histogram needs at least one bin");
  CheckModel(config, model, false);
  const RicianParams gain_law = RelayGainLaw(model);
  std::vector<double> samples(config.trials);
  ParallelBlocks(config.trials, Workers(config),
                 [&](std::int64_t begin, std::int64_t end, int) {
                   for (std::int64_t t = begin; t < end; ++t) {
                     CounterRng rng(config.seed, static_cast<std::uint64_t>(t));
                     double v = 0.0;
                     switch (quantity) {
                       case SampledQuantity::kD0Squared: {
                         const double d = SampleSatellite(rng, model.geometry).distance;
                         v = d * d;
                         break;
                       }
                       case SampledQuantity::kLambdaS:
                         v = model.satellite.transmit_snr *
                             SampleShadowedRician(rng, model.satellite);
                         break;
                       case SampledQuantity::kLambdaR:
                         v = SampleRicianPower(rng, model.relay);
                         break;
                       case SampledQuantity::kRatioZ:
                         v = RatioSample(rng, model, gain_law);
                         break;
                     }
                     samples[t] = v;
                   }
                 });
  std::sort(samples.begin(), samples.end());

  Histogram hist;
  hist.samples = config.trials;
  switch (quantity) {
    case SampledQuantity::kD0Squared:
      hist.ks_statistic = KsStatistic(
          samples, [&](double x) { return D0SquaredCdf(x, model.geometry); });
      break;
    case SampledQuantity::kLambdaS:
      hist.ks_statistic = KsStatistic(samples, [&](double x) {
        return ShadowedRicianCdf(x, model.satellite);
      });
      break;
    case SampledQuantity::kLambdaR:
      hist.ks_statistic = KsStatistic(
          samples, [&](double x) { return RicianCdf(x, model.relay); });
      break;
    case SampledQuantity::kRatioZ: {
      const InterferenceParams ip = InterferenceParams::Make(
          model.relay, model.interferer_rate, model.relay_power,
          model.interferer_power, model.noise_power);
      hist.ks_statistic = KsStatistic(samples, [&](double x) {
        return x > 0.0 ? InterferenceRatioCdf(x, ip) : 0.0;
      });
      break;
    }
  }

  // Bins span the central 99.9% so heavy tails do not flatten the picture.
  const std::size_t n = samples.size();
  hist.lo = samples[n / 2000];
  const double hi = samples[n - 1 - n / 2000];
  hist.bin_width = hi > hist.lo ? (hi - hist.lo) / bins : 1.0;
  hist.density.assign(bins, 0.0);
  for (double v : samples) {
    const double pos = (v - hist.lo) / hist.bin_width;
    if (pos < 0.0 || pos >= bins) continue;
    hist.density[static_cast<int>(pos)] += 1.0;
  }
  for (double& d : hist.density) d /= n * hist.bin_width;
  return hist;
}

}  // namespace satrelay
