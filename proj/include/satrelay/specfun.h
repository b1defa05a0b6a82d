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

// Special functions used by the coverage and outage formulas. All routines
// are pure; non-finite arguments raise DomainError.

#ifndef SATRELAY_SPECFUN_H_
#define SATRELAY_SPECFUN_H_

namespace satrelay {

// Marcum Q-function of order one,
//   Q1(a, b) = int_b^inf x exp(-(x^2 + a^2) / 2) I0(a x) dx,
// summed as a Poisson(a^2/2) mixture of regularized upper incomplete gammas
// Q(k + 1, b^2/2). Truncation stops once the unsummed Poisson mass drops
// below 1e-14; every omitted term is bounded by its weight, so that mass is
// an absolute error bound.
double MarcumQ1(double a, double b);

// Exponents of the fit Q1(a, b) ~ exp(-exp(upsilon(a)) b^mu(a)).
struct MarcumFit {
  double mu;
  double upsilon;
};
MarcumFit MarcumFitExponents(double a);

// exp(-exp(upsilon(a)) b^mu(a)). Tracks MarcumQ1 to within 0.03 for
// 1 <= a <= 4 and degrades beyond (about 0.09 at a = 5).
double MarcumQ1Approx(double a, double b);

// 1F1(m; 1; x) for integer m >= 1. Kummer's transformation gives
// e^x * sum_{k<m} (1-m)_k (-x)^k / (k!)^2, a finite sum.
double Kummer1F1Integer(int m, double x);

// Unregularized incomplete gamma functions for a > 0, x >= 0.
double UpperIncGamma(double a, double x);
double LowerIncGamma(double a, double x);

// int_{x1}^{x2} t^(a-1) e^(-t) dt for 0 <= x1 <= x2. Picks the lower or
// upper representation so that neither side cancels catastrophically.
double IncGammaInterval(double a, double x1, double x2);

double BesselI0(double x);
// exp(-|x|) I0(x); finite for every finite x.
double BesselI0Scaled(double x);

}  // namespace satrelay

#endif  // SATRELAY_SPECFUN_H_
