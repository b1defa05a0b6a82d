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

#include "satrelay/geometry.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "satrelay/errors.h"

namespace satrelay {
namespace {

void Require(bool ok, const std::string& message) {
  if (!ok) throw DomainError(message);
}

// U1^3 - U2^3 without cancellation when the radii are close.
double CubeGap(double outer, double inner) {
  return (outer - inner) * (outer * outer + outer * inner + inner * inner);
}

double QuarterSinSq(double apex_angle) {
  const double s = std::sin(0.25 * apex_angle);
  return s * s;
}

}  // namespace

void GeometryParams::Validate(bool with_interferer) const {
  Require(std::isfinite(relay_altitude) && relay_altitude > 0.0,
          "H1 must be positive");
  Require(std::isfinite(max_relay_altitude) &&
              relay_altitude <= max_relay_altitude,
          "H1 exceeds H_max_R");
  Require(std::isfinite(coverage_radius) && coverage_radius > 0.0,
          "L must be positive");
  Require(std::isfinite(receiver_density) && receiver_density >= 0.0,
          "density must be non-negative");
  Require(std::isfinite(earth_radius) && earth_radius > 0.0,
          "R_E must be positive");
  Require(std::isfinite(outer_radius) && std::isfinite(inner_radius) &&
              inner_radius < outer_radius,
          "U2 must be below U1");
  Require(inner_radius >= RelayRadius(),
          "U2 must not be below the relay radius H1 + R_E");
  Require(std::isfinite(apex_angle) && apex_angle > 0.0 &&
              apex_angle <= 2.0 * M_PI,
          "Psi must lie in (0, 2*pi]");
  if (with_interferer) {
    Require(std::isfinite(interferer_radius) &&
                interferer_radius > coverage_radius,
            "T_I must exceed L");
  }
}

double ExpectedNodeCount(const GeometryParams& params) {
  return M_PI * params.coverage_radius * params.coverage_radius *
         params.receiver_density;
}

double PoissonPmf(int k, double mean) {
  Require(k >= 0 && mean >= 0.0, "Poisson pmf needs k >= 0 and mean >= 0");
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(k * std::log(mean) - mean - std::lgamma(k + 1.0));
}

double ReceiverDistancePdf(double x, const GeometryParams& params) {
  const double h = params.relay_altitude;
  const double l = params.coverage_radius;
  if (x < h || x > std::sqrt(h * h + l * l)) return 0.0;
  return 2.0 * x / (l * l);
}

double InterfererDistance(double receiver_radius, double interferer_radius,
                          double angle) {
  Require(receiver_radius >= 0.0 && interferer_radius >= 0.0,
          "radii must be non-negative");
  const double diff = receiver_radius - interferer_radius;
  const double half = std::sin(0.5 * angle);
  return std::sqrt(diff * diff +
                   4.0 * receiver_radius * interferer_radius * half * half);
}

double SatelliteDistance(double radius, double polar_angle,
                         const GeometryParams& params) {
  const double slack = 1e-12 * params.outer_radius;
  Require(radius >= params.inner_radius - slack &&
              radius <= params.outer_radius + slack,
          "satellite radius outside [U2, U1]");
  Require(polar_angle >= 0.0 && polar_angle <= 0.5 * params.apex_angle,
          "polar angle outside [0, Psi/2]");
  const double h = params.RelayRadius();
  const double diff = radius - h;
  const double half = std::sin(0.5 * polar_angle);
  return std::sqrt(diff * diff + 4.0 * radius * h * half * half);
}

double ConeShellVolume(const GeometryParams& params) {
  return (4.0 * M_PI / 3.0) * QuarterSinSq(params.apex_angle) *
         CubeGap(params.outer_radius, params.inner_radius);
}

D0SquaredSupport SatelliteSupport(const GeometryParams& params) {
  const double h = params.RelayRadius();
  const double u1 = params.outer_radius;
  const double u2 = params.inner_radius;
  const double q = QuarterSinSq(params.apex_angle);
  D0SquaredSupport support;
  support.d0_min_sq = (u2 - h) * (u2 - h);
  support.d0_max_sq = (u1 - h) * (u1 - h) + 4.0 * u1 * h * q;
  support.tau = 3.0 / (4.0 * h * 2.0 * q * CubeGap(u1, u2));
  return support;
}

double D0SquaredPdf(double x, const GeometryParams& params) {
  const D0SquaredSupport support = SatelliteSupport(params);
  if (!(x >= support.d0_min_sq && x <= support.d0_max_sq)) return 0.0;
  const double h = params.RelayRadius();
  const double c = std::cos(0.5 * params.apex_angle);
  const double s = std::sin(0.5 * params.apex_angle);
  const double omega = std::min(params.outer_radius, h + std::sqrt(x));
  const double rho = std::max(
      params.inner_radius, h * c + std::sqrt(std::max(0.0, x - h * h * s * s)));
  return support.tau * std::max(0.0, omega * omega - rho * rho);
}

double D0SquaredCdf(double x, const GeometryParams& params) {
  const D0SquaredSupport support = SatelliteSupport(params);
  if (x <= support.d0_min_sq) return 0.0;
  if (x >= support.d0_max_sq) return 1.0;
  const double h = params.RelayRadius();
  const double u1 = params.outer_radius;
  const double u2 = params.inner_radius;
  const double c = std::cos(0.5 * params.apex_angle);
  const double s = std::sin(0.5 * params.apex_angle);
  const double a = h * h * s * s;

  // Antiderivatives of the upper and lower radial limits squared on their
  // curved pieces; both limits are constant outside them.
  auto upper = [&](double t) {
    return h * h * t + (4.0 * h / 3.0) * std::pow(t, 1.5) + 0.5 * t * t;
  };
  auto lower = [&](double t) {
    const double v = t - a;
    return h * h * c * c * t + (4.0 * h * c / 3.0) * std::pow(v, 1.5) +
           0.5 * v * v;
  };
  const double x_min = support.d0_min_sq;
  const double x_upper = (u1 - h) * (u1 - h);
  const double x_lower = a + (u2 - h * c) * (u2 - h * c);

  const double outer_part =
      x <= x_upper ? upper(x) - upper(x_min)
                   : upper(x_upper) - upper(x_min) + u1 * u1 * (x - x_upper);
  const double inner_part =
      x <= x_lower ? u2 * u2 * (x - x_min)
                   : u2 * u2 * (x_lower - x_min) + lower(x) - lower(x_lower);
  return std::clamp(support.tau * (outer_part - inner_part), 0.0, 1.0);
}

ReceiverSample ReceiverFromUniform(double u, const GeometryParams& params) {
  const double r = params.coverage_radius * std::sqrt(u);
  return {r, std::hypot(params.relay_altitude, r)};
}

InterfererSample InterfererFromUniform(double u_radius, double u_angle,
                                       const GeometryParams& params) {
  return {params.interferer_radius * std::sqrt(u_radius),
          2.0 * M_PI * u_angle};
}

SatelliteSample SatelliteFromUniform(double u_radius, double u_angle,
                                     const GeometryParams& params) {
  const double u1 = params.outer_radius;
  const double u2 = params.inner_radius;
  const double h = params.RelayRadius();
  const double r = std::clamp(
      std::cbrt(u2 * u2 * u2 + u_radius * CubeGap(u1, u2)), u2, u1);
  // cos(theta) is uniform on [cos(Psi/2), 1]; in half-angle form that is
  // sin^2(theta/2) = u sin^2(Psi/4).
  const double half_sin_sq = u_angle * QuarterSinSq(params.apex_angle);
  const double theta =
      std::min(2.0 * std::asin(std::sqrt(half_sin_sq)), 0.5 * params.apex_angle);
  const double diff = r - h;
  return {r, theta, std::sqrt(diff * diff + 4.0 * r * h * half_sin_sq)};
}

ReceiverSample SampleReceiver(CounterRng& rng, const GeometryParams& params) {
  return ReceiverFromUniform(rng.Uniform(), params);
}

InterfererSample SampleInterferer(CounterRng& rng,
                                  const GeometryParams& params) {
  const double u_radius = rng.Uniform();
  const double u_angle = rng.Uniform();
  return InterfererFromUniform(u_radius, u_angle, params);
}

SatelliteSample SampleSatellite(CounterRng& rng, const GeometryParams& params) {
  const double u_radius = rng.Uniform();
  const double u_angle = rng.Uniform();
  return SatelliteFromUniform(u_radius, u_angle, params);
}

}  // namespace satrelay
