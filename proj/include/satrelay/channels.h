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


// Fading laws of the three links and samplers for each.

#ifndef SATRELAY_CHANNELS_H_
#define SATRELAY_CHANNELS_H_

#include "satrelay/rng.h"

namespace satrelay {

// Shadowed-Rician satellite link. `transmit_snr` scales the unit-power gain
// into the received SNR before path loss.
struct ShadowedRicianParams {
  double b = 10.0;       // half of the multipath power
  int m = 2;             // shadowing severity
  double omega = 1.0;    // line-of-sight power
  double transmit_snr = 1.0;
  double path_loss = 2.0;
  double alpha = 0.0;
  double beta = 0.0;
  double delta = 0.0;

  // Validates the inputs and fills in the derived constants.
  static ShadowedRicianParams Make(double b, int m, double omega,
                                   double transmit_snr, double path_loss = 2.0);

  // Coefficient of x^k in the finite series of the gain density.
  double SeriesCoefficient(int k) const;
};

double ShadowedRicianPdf(double x, const ShadowedRicianParams& p);
double ShadowedRicianCdf(double x, const ShadowedRicianParams& p);
double ShadowedRicianSurvival(double x, const ShadowedRicianParams& p);

// Rician relay link, `mean_power` being the mean of the received SNR.
struct RicianParams {
  double k_factor = 0.1;
  double mean_power = 1.0;
  double path_loss = 2.0;

  void Validate() const;
};

double RicianCdf(double x, const RicianParams& p);
double RicianSurvival(double x, const RicianParams& p);

// Constants of the signal-to-interference ratio law at a receiver.
struct InterferenceParams {
  double k_factor = 0.0;
  double omega_x = 1.0;  // mean relay-link power gain
  double path_loss = 2.0;
  double gamma1 = 0.0;
  double gamma2 = 0.0;
  double gamma3 = 0.0;
  double gamma4 = 0.0;

  // `relay.mean_power` is the mean received SNR; the power gain mean is
  // recovered by multiplying with noise_power / relay_power.
  static InterferenceParams Make(const RicianParams& relay,
                                 double interferer_rate, double relay_power,
                                 double interferer_power, double noise_power);
  // Direct form used when the gain mean and the rate ratio are known.
  static InterferenceParams FromRatio(double k_factor, double omega_x,
                                      double gamma3, double path_loss = 2.0);
};

// Unit-free gain |h|^2 of the satellite link (not scaled by transmit_snr).
double SampleShadowedRician(CounterRng& rng, const ShadowedRicianParams& p);
double SampleRicianPower(CounterRng& rng, const RicianParams& p);
double SampleRayleighPower(CounterRng& rng, double rate);

double SampleStandardNormal(CounterRng& rng);

}  // namespace satrelay

#endif  // SATRELAY_CHANNELS_H_
