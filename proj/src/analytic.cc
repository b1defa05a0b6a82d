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

#include "satrelay/analytic.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "satrelay/errors.h"
#include "satrelay/quadrature.h"
#include "satrelay/specfun.h"

namespace satrelay {
namespace {

ProbabilityResult Finish(double raw, Method method, double threshold,
                         const QuadratureOrders& orders) {
  ProbabilityResult result;
  result.unclamped = raw;
  result.value = std::clamp(raw, 0.0, 1.0);
  result.method = method;
  result.threshold = threshold;
  result.orders = orders;
  return result;
}

void RequireThreshold(double threshold) {
  if (!std::isfinite(threshold)) throw DomainError("threshold must be finite");
}

// Chebyshev nodes of a radial density 2r/R^2 on [0, R] mapped from [-1, 1]:
// the weight w sqrt(1 - t^2) (t + 1) / 2 integrates against that density.
struct RadialNodes {
  std::vector<double> fraction;  // r / R
  std::vector<double> weight;
};

RadialNodes MakeRadialNodes(int order) {
  const ChebyshevRule rule(order);
  RadialNodes out;
  for (int i = 0; i < order; ++i) {
    const double t = rule.nodes()[i];
    out.fraction.push_back(0.5 * (t + 1.0));
    out.weight.push_back(0.5 * rule.plain_weights()[i] * (t + 1.0));
  }
  return out;
}

double SatelliteOutageSum(const GeometryParams& geom,
                          const ShadowedRicianParams& sr, double threshold,
                          int order) {
  const D0SquaredSupport support = SatelliteSupport(geom);
  const double half = 0.5 * (support.d0_max_sq - support.d0_min_sq);
  const double mid = 0.5 * (support.d0_max_sq + support.d0_min_sq);
  const ChebyshevRule rule(order);
  double sum = 0.0;
  for (int i = 0; i < order; ++i) {
    const double x = half * rule.nodes()[i] + mid;
    sum += rule.plain_weights()[i] *
           ShadowedRicianSurvival(threshold * x, sr) * D0SquaredPdf(x, geom);
  }
  return 1.0 - half * sum;
}

}  // namespace

void QuadratureOrders::Validate() const {
  if (g < 1 || h < 1 || j < 1 || q < 1) {
    throw DomainError("quadrature orders must be >= 1");
  }
}

std::string_view MethodName(Method method) {
  switch (method) {
    case Method::kExactIntegral:
      return "exact-integral";
    case Method::kClosedApprox:
      return "closed-approx";
    case Method::kQuadrature:
      return "quadrature";
  }
  return "unknown";
}

std::string_view ScenarioName(RelayScenario scenario) {
  return scenario == RelayScenario::kInterference ? "interference"
                                                  : "non-interference";
}

ProbabilityResult CoverageNonInterferenceExact(const GeometryParams& geom,
                                               const RicianParams& relay,
                                               double threshold) {
  RequireThreshold(threshold);
  relay.Validate();
  const QuadratureOrders orders;
  if (threshold <= 0.0) {
    return Finish(1.0, Method::kExactIntegral, threshold, orders);
  }
  const double h1 = geom.relay_altitude;
  const double l = geom.coverage_radius;
  const double scale = 2.0 / (l * l);
  const AdaptiveResult r = IntegrateAdaptive(
      [&](double x) {
        return scale * x *
               RicianSurvival(threshold * std::pow(x, relay.path_loss), relay);
      },
      h1, std::sqrt(h1 * h1 + l * l));
  return Finish(r.value, Method::kExactIntegral, threshold, orders);
}

ProbabilityResult CoverageNonInterferenceApprox(const GeometryParams& geom,
                                                const RicianParams& relay,
                                                double threshold) {
  RequireThreshold(threshold);
  relay.Validate();
  const QuadratureOrders orders;
  if (threshold <= 0.0) {
    return Finish(1.0, Method::kClosedApprox, threshold, orders);
  }
  const MarcumFit fit = MarcumFitExponents(std::sqrt(2.0 * relay.k_factor));
  if (fit.mu <= 0.0) {
    throw DomainError("Marcum-Q fit is not valid for this Rice factor");
  }
  const double n2 = relay.path_loss;
  const double h1 = geom.relay_altitude;
  const double l = geom.coverage_radius;
  const double theta = 2.0 * (1.0 + relay.k_factor) * threshold / relay.mean_power;
  const double shape = 4.0 / (n2 * fit.mu);
  // y = e^upsilon theta^(mu/2) x^(n2 mu/2), taken in logs.
  const double log_y_scale = fit.upsilon + 0.5 * fit.mu * std::log(theta);
  const double y_min = std::exp(log_y_scale + 0.5 * n2 * fit.mu * std::log(h1));
  const double y_max = std::exp(log_y_scale +
                                0.25 * n2 * fit.mu * std::log(h1 * h1 + l * l));
  const double interval = IncGammaInterval(shape, y_min, y_max);
  double raw = 0.0;
  if (interval > 0.0) {
    const double log_prefactor = std::log(shape / (l * l)) -
                                 fit.upsilon * shape -
                                 (2.0 / n2) * std::log(theta);
    raw = std::exp(log_prefactor + std::log(interval));
  }
  return Finish(raw, Method::kClosedApprox, threshold, orders);
}

double InterferenceRatioCdf(double z, const InterferenceParams& ip) {
  if (!(z > 0.0)) throw DomainError("ratio CDF needs z > 0");
  if (std::isinf(z)) return 1.0;
  const double theta = 1.0 / (ip.gamma2 + ip.gamma3 / z);
  return ip.gamma1 * theta * Kummer1F1Integer(1, ip.gamma4 * theta);
}

double SirCdf(double x, const GeometryParams& geom,
              const InterferenceParams& ip, const QuadratureOrders& orders) {
  if (!(x > 0.0) || !std::isfinite(x)) {
    throw DomainError("SIR CDF needs a positive finite argument");
  }
  if (ip.path_loss != 2.0) {
    throw UnsupportedError("interference analysis supports n2 = 2 only");
  }
  orders.Validate();
  const ChebyshevRule angle_rule(orders.g);
  const RadialNodes interferer = MakeRadialNodes(orders.h);
  const RadialNodes receiver = MakeRadialNodes(orders.j);
  const double t_i = geom.interferer_radius;
  const double l = geom.coverage_radius;
  const double h1_sq = geom.relay_altitude * geom.relay_altitude;
  const double ratio = ip.gamma3 / x;

  double total = 0.0;
  for (int k = 0; k < orders.j; ++k) {
    const double r_i = l * receiver.fraction[k];
    const double slant_sq = r_i * r_i + h1_sq;
    double over_interferer = 0.0;
    for (int j = 0; j < orders.h; ++j) {
      const double r_int = t_i * interferer.fraction[j];
      const double base = r_i * r_i + r_int * r_int;
      const double cross = 2.0 * r_i * r_int;
      double over_angle = 0.0;
      for (int g = 0; g < orders.g; ++g) {
        const double u_sq = base - cross * angle_rule.nodes()[g];
        const double theta = 1.0 / (ip.gamma2 + ratio * u_sq / slant_sq);
        over_angle += angle_rule.weights()[g] * theta *
                      std::exp(ip.gamma4 * theta);
      }
      over_interferer += interferer.weight[j] * over_angle;
    }
    total += receiver.weight[k] * over_interferer;
  }
  return ip.gamma1 / M_PI * total;
}

ProbabilityResult CoverageInterference(const GeometryParams& geom,
                                       const InterferenceParams& ip,
                                       double threshold,
                                       const QuadratureOrders& orders,
                                       bool check_refinement) {
  RequireThreshold(threshold);
  if (threshold <= 0.0) {
    return Finish(1.0, Method::kQuadrature, threshold, orders);
  }
  ProbabilityResult result = Finish(1.0 - SirCdf(threshold, geom, ip, orders),
                                    Method::kQuadrature, threshold, orders);
  if (check_refinement) {
    const double fine = 1.0 - SirCdf(threshold, geom, ip, orders.Doubled());
    result.refinement_delta = std::fabs(fine - result.unclamped);
  }
  return result;
}

double OutageSrConditional(double distance, const ShadowedRicianParams& sr,
                           double threshold) {
  if (!(distance > 0.0)) throw DomainError("distance must be positive");
  RequireThreshold(threshold);
  if (threshold <= 0.0) return 0.0;
  return ShadowedRicianCdf(threshold * std::pow(distance, sr.path_loss), sr);
}

ProbabilityResult OutageSr(const GeometryParams& geom,
                           const ShadowedRicianParams& sr, double threshold,
                           const QuadratureOrders& orders,
                           bool check_refinement) {
  RequireThreshold(threshold);
  orders.Validate();
  if (sr.path_loss != 2.0) {
    throw UnsupportedError("satellite-link analysis supports n1 = 2 only");
  }
  if (threshold <= 0.0) {
    return Finish(0.0, Method::kQuadrature, threshold, orders);
  }
  ProbabilityResult result =
      Finish(SatelliteOutageSum(geom, sr, threshold, orders.q),
             Method::kQuadrature, threshold, orders);
  if (check_refinement) {
    const double fine = SatelliteOutageSum(geom, sr, threshold, 2 * orders.q);
    result.refinement_delta = std::fabs(fine - result.unclamped);
  }
  return result;
}

double CombineHops(double coverage, double satellite_outage) {
  return 1.0 - coverage * (1.0 - satellite_outage);
}

EndToEndResult EndToEndOutage(const EndToEndInputs& in) {
  EndToEndResult out;
  out.satellite_outage =
      OutageSr(in.geometry, in.satellite, in.outage_threshold, in.orders);
  if (in.scenario == RelayScenario::kInterference) {
    out.coverage = CoverageInterference(in.geometry, in.interference,
                                        in.coverage_threshold, in.orders);
  } else if (in.exact_coverage) {
    out.coverage =
        CoverageNonInterferenceExact(in.geometry, in.relay, in.coverage_threshold);
  } else {
    out.coverage = CoverageNonInterferenceApprox(in.geometry, in.relay,
                                                 in.coverage_threshold);
  }
  const double raw =
      CombineHops(out.coverage.value, out.satellite_outage.value);
  out.outage = Finish(raw, out.coverage.method, in.outage_threshold, in.orders);
  return out;
}

}  // namespace satrelay
