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


#ifndef SATRELAY_CLI_COMMANDS_H_
#define SATRELAY_CLI_COMMANDS_H_

#include <ostream>
#include <string>
#include <vector>

#include "cli/config.h"

namespace satrelay::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;  // optimizer did not converge
inline constexpr int kExitConfig = 2;
inline constexpr int kExitInfeasible = 3;
inline constexpr int kExitValidation = 4;

// Channel gains fed to the optimizer, either configured or drawn once.
struct OptimizerGains {
  double satellite_gain;
  double relay_gain;
  bool satellite_drawn;
  bool relay_drawn;
  double satellite_distance;  // km, nan when not used
  double receiver_distance;   // km, nan when not used
};

OptimizerGains ResolveGains(const ScenarioConfig& config);
LinkBudget MakeLinkBudget(const ScenarioConfig& config,
                          const OptimizerGains& gains);

// Runs the command line `args` (without the program name). JSON or CSV goes
// to `out`, diagnostics to `err`; returns the process exit code.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace satrelay::cli

#endif  // SATRELAY_CLI_COMMANDS_H_
