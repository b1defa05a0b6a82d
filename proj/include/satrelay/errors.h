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

#ifndef SATRELAY_ERRORS_H_
#define SATRELAY_ERRORS_H_

#include <stdexcept>
#include <string>

namespace satrelay {

// Argument outside the mathematical domain of a function or model.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A model configuration the closed-form analysis does not cover, e.g. a
// path-loss exponent other than 2 on the interference route.
class UnsupportedError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Inconsistent or incomplete inputs for a requested computation.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The deadline cannot be met even at full power on both hops.
class InfeasibleError : public std::runtime_error {
 public:
  InfeasibleError(double satellite_min_time, double relay_min_time,
                  double deadline);

  double satellite_min_time() const { return satellite_min_time_; }
  double relay_min_time() const { return relay_min_time_; }
  double deadline() const { return deadline_; }

 private:
  double satellite_min_time_;
  double relay_min_time_;
  double deadline_;
};

}  // namespace satrelay

#endif  // SATRELAY_ERRORS_H_
