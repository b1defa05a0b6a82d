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


// Scenario files: a JSON tree of sections whose leaves are numbers or
// unit-tagged quantities such as "30 dB", "50 W" or {"value": 1, "unit": "dB"}.
// Everything is converted to linear SI-like units (km, W, s) on load.

#ifndef SATRELAY_CLI_CONFIG_H_
#define SATRELAY_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "json.hpp"
#include "satrelay/analytic.h"
#include "satrelay/channels.h"
#include "satrelay/geometry.h"
#include "satrelay/montecarlo.h"
#include "satrelay/optimizer.h"

namespace satrelay::cli {

struct ScenarioConfig {
  GeometryParams geometry;

  // Channel section, all linear.
  double b = 10.0;
  int m = 2;
  double omega = 1.0;
  double k_factor = 0.1;
  double omega_r = 316.22776601683796;  // mean relay-link SNR, 25 dB
  double lambda_i = 1.0;
  double n1 = 2.0;
  double n2 = 2.0;
  double sigma2 = 1e-3;  // W

  // Power section, W.
  double p_s = 1000.0;
  double p_r = 1.2589254117941673;
  double p_i = 1.2589254117941673;

  // Thresholds, linear.
  double gamma_th = 1.0;
  double gamma_out = 1.0;
  double z = 1.0;

  QuadratureOrders orders;

  std::int64_t trials = 1000000;
  std::uint64_t seed = 1;
  int threads = 0;

  // Optimizer section.
  double d_sd = 1e6;
  double b_s = 1e6;
  double b_r = 1e6;
  double t_total = 1.0;
  double p_s_max = 50.0;
  double p_r_max = 10.0;
  std::optional<double> gamma_sr;
  std::optional<double> gamma_rd;
  std::optional<double> d0;  // km; sampled from the cone shell when unset
  RelayScenario rd_scenario = RelayScenario::kNonInterference;
  StepRule step_rule = StepRule::kCurvature;
};

// Field-level validation of every module's invariants; throws ConfigError.
void ValidateConfig(const ScenarioConfig& config, bool with_interferer);

// Parses a scenario tree on top of the defaults. Unknown keys are errors.
ScenarioConfig ParseConfig(const nlohmann::json& tree);
ScenarioConfig LoadConfigFile(const std::string& path);

// Applies "section.key=value" with the value in scenario-file syntax.
void ApplyOverride(ScenarioConfig& config, std::string_view assignment);

// Fully resolved configuration in scenario-file syntax; feeding it back
// through ParseConfig reproduces `config`.
nlohmann::ordered_json ResolvedConfig(const ScenarioConfig& config);

// Library views of the configuration.
ShadowedRicianParams SatelliteLink(const ScenarioConfig& config);
RicianParams RelayLink(const ScenarioConfig& config);
InterferenceParams InterferenceLink(const ScenarioConfig& config);
SystemModel MakeSystemModel(const ScenarioConfig& config);
EndToEndInputs MakeEndToEndInputs(const ScenarioConfig& config,
                                  RelayScenario scenario);

}  // namespace satrelay::cli

#endif  // SATRELAY_CLI_CONFIG_H_
