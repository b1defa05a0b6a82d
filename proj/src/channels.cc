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

#include "satrelay/channels.h"

#include <algorithm>
#include <cmath>

#include "satrelay/errors.h"
#include "satrelay/specfun.h"

namespace satrelay {
namespace {

void Require(bool ok, const char* message) {
  if (!ok) throw DomainError(message);
}

double Factorial(int k) { return std::tgamma(k + 1.0); }

}  // namespace

ShadowedRicianParams ShadowedRicianParams::Make(double b, int m, double omega,
                                                double transmit_snr,
                                                double path_loss) {
  Require(std::isfinite(b) && b > 0.0, "b must be positive");
  Require(m >= 1, "m must be an integer >= 1");
  Require(std::isfinite(omega) && omega > 0.0, "Omega must be positive");
  Require(std::isfinite(transmit_snr) && transmit_snr > 0.0,
          "transmit SNR must be positive");
  Require(std::isfinite(path_loss) && path_loss > 0.0,
          "n1 must be positive");
  ShadowedRicianParams p;
  p.b = b;
  p.m = m;
  p.omega = omega;
  p.transmit_snr = transmit_snr;
  p.path_loss = path_loss;
  const double denom = 2.0 * b * m + omega;
  p.alpha = std::pow(2.0 * b * m / denom, m) / (2.0 * b);
  p.beta = 1.0 / (2.0 * b);
  p.delta = omega / (2.0 * b * denom);
  return p;
}

double ShadowedRicianParams::SeriesCoefficient(int k) const {
  // (-1)^k (1-m)_k delta^k / (k!)^2
  double pochhammer = 1.0;
  for (int i = 0; i < k; ++i) pochhammer *= 1.0 - m + i;
  const double sign = (k % 2 == 0) ? 1.0 : -1.0;
  const double fact = Factorial(k);
  return sign * pochhammer * std::pow(delta, k) / (fact * fact);
}

double ShadowedRicianPdf(double x, const ShadowedRicianParams& p) {
  if (x < 0.0) return 0.0;
  const double y = x / p.transmit_snr;
  const double decay = p.m / (2.0 * p.b * p.m + p.omega);
  double sum = 0.0;
  for (int k = 0; k < p.m; ++k) sum += p.SeriesCoefficient(k) * std::pow(y, k);
  return p.alpha / p.transmit_snr * sum * std::exp(-decay * y);
}

double ShadowedRicianSurvival(double x, const ShadowedRicianParams& p) {
  if (x <= 0.0) return 1.0;
  const double y = x / p.transmit_snr;
  // beta - delta in the cancellation-free form m / (2bm + Omega).
  const double decay = p.m / (2.0 * p.b * p.m + p.omega);
  double sum = 0.0;
  for (int k = 0; k < p.m; ++k) {
    double inner = 0.0;
    for (int j = 0; j <= k; ++j) {
      inner += Factorial(k) / Factorial(j) * std::pow(decay, -(k + 1 - j)) *
               std::pow(y, j);
    }
    sum += p.SeriesCoefficient(k) * inner;
  }
  return std::clamp(p.alpha * sum * std::exp(-decay * y), 0.0, 1.0);
}

double ShadowedRicianCdf(double x, const ShadowedRicianParams& p) {
  return 1.0 - ShadowedRicianSurvival(x, p);
}

void RicianParams::Validate() const {
  Require(std::isfinite(k_factor) && k_factor >= 0.0, "K must be >= 0");
  Require(std::isfinite(mean_power) && mean_power > 0.0,
          "Omega_R must be positive");
  Require(std::isfinite(path_loss) && path_loss > 0.0, "n2 must be positive");
}

double RicianSurvival(double x, const RicianParams& p) {
  if (x <= 0.0) return 1.0;
  return MarcumQ1(std::sqrt(2.0 * p.k_factor),
                  std::sqrt(2.0 * (1.0 + p.k_factor) * x / p.mean_power));
}

double RicianCdf(double x, const RicianParams& p) {
  return 1.0 - RicianSurvival(x, p);
}

InterferenceParams InterferenceParams::Make(const RicianParams& relay,
                                            double interferer_rate,
                                            double relay_power,
                                            double interferer_power,
                                            double noise_power) {
  relay.Validate();
  Require(std::isfinite(interferer_rate) && interferer_rate > 0.0,
          "lambda_I must be positive");
  Require(std::isfinite(relay_power) && relay_power > 0.0,
          "P_R must be positive");
  Require(std::isfinite(interferer_power) && interferer_power > 0.0,
          "P_I must be positive");
  Require(std::isfinite(noise_power) && noise_power > 0.0,
          "sigma2 must be positive");
  return FromRatio(relay.k_factor, relay.mean_power * noise_power / relay_power,
                   interferer_rate * relay_power / interferer_power,
                   relay.path_loss);
}

InterferenceParams InterferenceParams::FromRatio(double k_factor,
                                                 double omega_x, double gamma3,
                                                 double path_loss) {
  Require(std::isfinite(k_factor) && k_factor >= 0.0, "K must be >= 0");
  Require(std::isfinite(omega_x) && omega_x > 0.0,
          "relay gain mean must be positive");
  Require(std::isfinite(gamma3) && gamma3 > 0.0,
          "interference rate ratio must be positive");
  InterferenceParams p;
  p.k_factor = k_factor;
  p.omega_x = omega_x;
  p.path_loss = path_loss;
  p.gamma2 = (1.0 + k_factor) / omega_x;
  p.gamma1 = p.gamma2 * std::exp(-k_factor);
  p.gamma3 = gamma3;
  p.gamma4 = k_factor * p.gamma2;
  return p;
}

double SampleStandardNormal(CounterRng& rng) {
  const double u1 = 1.0 - rng.Uniform();  // (0, 1]
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

double SampleShadowedRician(CounterRng& rng, const ShadowedRicianParams& p) {
  // Integer-shape gamma as a sum of exponentials: xi^2 ~ Gamma(m, Omega/m).
  double los_power = 0.0;
  for (int i = 0; i < p.m; ++i) los_power -= std::log(1.0 - rng.Uniform());
  los_power *= p.omega / p.m;
  const double phase = 2.0 * M_PI * rng.Uniform();
  const double amplitude = std::sqrt(los_power);
  const double scale = std::sqrt(p.b);
  const double re = amplitude * std::cos(phase) + scale * SampleStandardNormal(rng);
  const double im = amplitude * std::sin(phase) + scale * SampleStandardNormal(rng);
  return re * re + im * im;
}

double SampleRicianPower(CounterRng& rng, const RicianParams& p) {
  const double los = std::sqrt(p.k_factor * p.mean_power / (1.0 + p.k_factor));
  const double scale = std::sqrt(p.mean_power / (2.0 * (1.0 + p.k_factor)));
  const double re = los + scale * SampleStandardNormal(rng);
  const double im = scale * SampleStandardNormal(rng);
  return re * re + im * im;
}

double SampleRayleighPower(CounterRng& rng, double rate) {
  return -std::log(1.0 - rng.Uniform()) / rate;
}

}  // namespace satrelay
