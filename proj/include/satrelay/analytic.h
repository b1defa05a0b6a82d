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


// Coverage and outage probabilities of the satellite-relay-receiver chain.

#ifndef SATRELAY_ANALYTIC_H_
#define SATRELAY_ANALYTIC_H_

#include <optional>
#include <string_view>

#include "satrelay/channels.h"
#include "satrelay/geometry.h"

namespace satrelay {

// Node counts of the Chebyshev-Gauss sums: g over the interferer angle, h
// over the interferer radius, j over the receiver radius and q over the
// squared satellite distance.
struct QuadratureOrders {
  int g = 50;
  int h = 50;
  int j = 50;
  int q = 50;

  void Validate() const;
  QuadratureOrders Doubled() const { return {2 * g, 2 * h, 2 * j, 2 * q}; }
};

enum class Method { kExactIntegral, kClosedApprox, kQuadrature };

std::string_view MethodName(Method method);

struct ProbabilityResult {
  double value = 0.0;      // clamped to [0, 1]
  double unclamped = 0.0;  // raw formula output
  Method method = Method::kQuadrature;
  QuadratureOrders orders;
  double threshold = 0.0;  // linear
  // |value(orders) - value(2 * orders)| when a refinement check was asked for.
  std::optional<double> refinement_delta;
};

// Non-interference coverage by adaptive quadrature of the exact Marcum-Q
// integrand over the receiver distance.
ProbabilityResult CoverageNonInterferenceExact(const GeometryParams& geom,
                                               const RicianParams& relay,
                                               double threshold);

// Closed form obtained with the exponential Marcum-Q fit.
ProbabilityResult CoverageNonInterferenceApprox(const GeometryParams& geom,
                                                const RicianParams& relay,
                                                double threshold);

// CDF of the power ratio P_R |h_RD|^2 / (P_I |h_ID|^2).
double InterferenceRatioCdf(double z, const InterferenceParams& ip);

// CDF of the receiver SIR averaged over receiver and interferer positions.
double SirCdf(double x, const GeometryParams& geom,
              const InterferenceParams& ip, const QuadratureOrders& orders);

ProbabilityResult CoverageInterference(const GeometryParams& geom,
                                       const InterferenceParams& ip,
                                       double threshold,
                                       const QuadratureOrders& orders,
                                       bool check_refinement = false);

// Satellite-link outage at a fixed distance.
double OutageSrConditional(double distance, const ShadowedRicianParams& sr,
                           double threshold);

// Satellite-link outage averaged over the satellite position.
ProbabilityResult OutageSr(const GeometryParams& geom,
                           const ShadowedRicianParams& sr, double threshold,
                           const QuadratureOrders& orders,
                           bool check_refinement = false);

// The decode-and-forward chain fails when either hop fails.
double CombineHops(double coverage, double satellite_outage);

enum class RelayScenario { kNonInterference, kInterference };

std::string_view ScenarioName(RelayScenario scenario);

struct EndToEndInputs {
  GeometryParams geometry;
  ShadowedRicianParams satellite;
  RicianParams relay;
  InterferenceParams interference;  // read for kInterference only
  RelayScenario scenario = RelayScenario::kNonInterference;
  double coverage_threshold = 1.0;
  double outage_threshold = 1.0;
  QuadratureOrders orders;
  // Non-interference hop by the exact integral instead of the closed form.
  bool exact_coverage = false;
};

struct EndToEndResult {
  ProbabilityResult outage;
  ProbabilityResult coverage;
  ProbabilityResult satellite_outage;
};

EndToEndResult EndToEndOutage(const EndToEndInputs& in);

}  // namespace satrelay

#endif  // SATRELAY_ANALYTIC_H_
