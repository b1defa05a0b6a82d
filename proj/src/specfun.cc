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

#include "satrelay/specfun.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "satrelay/errors.h"

namespace satrelay {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;

void RequireFinite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

// gamma(a, x) by its power series; converges for every x but fast only for
// x < a + 1.
double LowerSeries(double a, double x) {
  double term = 1.0 / a;
  double sum = term;
  for (int n = 1; n < 10000; ++n) {
    term *= x / (a + n);
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kEps) break;
  }
  return sum * std::exp(-x + a * std::log(x));
}

// Gamma(a, x) by the Legendre continued fraction (modified Lentz), x >= a+1.
double UpperFraction(double a, double x) {
  double b = x + 1.0 - a;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 10000; ++i) {
    const double an = -i * (i - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < kTiny) d = kTiny;
    c = b + an / c;
    if (std::fabs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::fabs(del - 1.0) < kEps) break;
  }
  return std::exp(-x + a * std::log(x)) * h;
}

void CheckGammaArgs(double a, double x) {
  RequireFinite(a, "incomplete gamma shape");
  RequireFinite(x, "incomplete gamma argument");
  if (a <= 0.0) throw DomainError("incomplete gamma shape must be positive");
  if (x < 0.0) throw DomainError("incomplete gamma argument must be >= 0");
}

// Poisson(mean) probability of k, in log space so large means do not
// underflow the leading terms.
double PoissonTerm(double mean, int k) {
  if (mean == 0.0) return k == 0 ? 1.0 : 0.0;
  return std::exp(-mean + k * std::log(mean) - std::lgamma(k + 1.0));
}

}  // namespace

double MarcumQ1(double a, double b) {
  RequireFinite(a, "Marcum-Q a");
  RequireFinite(b, "Marcum-Q b");
  if (a < 0.0 || b < 0.0) throw DomainError("Marcum-Q arguments must be >= 0");
  if (b == 0.0) return 1.0;
  const double nu = 0.5 * a * a;
  const double y = 0.5 * b * b;
  if (nu == 0.0) return std::exp(-y);

  // Q1 = sum_k Pois(k; nu) * Pr{Pois(y) <= k}. The inner CDF q grows with k,
  // so the unsummed remainder lies in [(1 - mass) q, 1 - mass].
  const int k_cap =
      static_cast<int>(nu + 40.0 * std::sqrt(nu) + 10.0 * std::sqrt(y) + 200);
  double mass = 0.0;
  double q = 0.0;
  double sum = 0.0;
  for (int k = 0; k <= k_cap; ++k) {
    const double w = PoissonTerm(nu, k);
    q += PoissonTerm(y, k);
    mass += w;
    sum += w * q;
    const double rest = std::max(0.0, 1.0 - mass);
    if (k > nu && (rest < 1e-14 || rest * (1.0 - std::min(q, 1.0)) < 1e-15)) {
      sum += rest * std::min(q, 1.0);
      break;
    }
  }
  return std::clamp(sum, 0.0, 1.0);
}

MarcumFit MarcumFitExponents(double a) {
  const double a2 = a * a;
  return {2.174 - 0.592 * a + 0.593 * a2 - 0.092 * a2 * a + 0.005 * a2 * a2,
          -0.840 + 0.327 * a - 0.740 * a2 + 0.083 * a2 * a - 0.004 * a2 * a2};
}

double MarcumQ1Approx(double a, double b) {
  RequireFinite(a, "Marcum-Q a");
  RequireFinite(b, "Marcum-Q b");
  if (a < 0.0 || b < 0.0) throw DomainError("Marcum-Q arguments must be >= 0");
  if (b == 0.0) return 1.0;
  const MarcumFit fit = MarcumFitExponents(a);
  return std::exp(-std::exp(fit.upsilon) * std::pow(b, fit.mu));
}

double Kummer1F1Integer(int m, double x) {
  RequireFinite(x, "1F1 argument");
  if (m < 1) throw DomainError("1F1(m;1;x) requires integer m >= 1");
  double term = 1.0;
  double sum = 1.0;
  for (int k = 0; k + 1 < m; ++k) {
    term *= (1.0 - m + k) * (-x) / ((k + 1.0) * (k + 1.0));
    sum += term;
  }
  return std::exp(x) * sum;
}

double UpperIncGamma(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return std::tgamma(a);
  if (x < a + 1.0) return std::tgamma(a) - LowerSeries(a, x);
  return UpperFraction(a, x);
}

double LowerIncGamma(double a, double x) {
  CheckGammaArgs(a, x);
  if (x == 0.0) return 0.0;
  if (x < a + 1.0) return LowerSeries(a, x);
  return std::tgamma(a) - UpperFraction(a, x);
}

double IncGammaInterval(double a, double x1, double x2) {
  CheckGammaArgs(a, x1);
  CheckGammaArgs(a, x2);
  if (x2 < x1) throw DomainError("incomplete gamma interval must be ordered");
  if (x1 == x2) return 0.0;
  if (x1 >= a + 1.0) return UpperIncGamma(a, x1) - UpperIncGamma(a, x2);
  return LowerIncGamma(a, x2) - LowerIncGamma(a, x1);
}

double BesselI0Scaled(double x) {
  RequireFinite(x, "I0 argument");
  const double ax = std::fabs(x);
  if (ax <= 15.0) {
    const double q = 0.25 * ax * ax;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 500; ++k) {
      term *= q / (static_cast<double>(k) * k);
      sum += term;
      if (term < sum * kEps) break;
    }
    return std::exp(-ax) * sum;
  }
  // Hankel asymptotic series, summed while terms keep shrinking.
  double term = 1.0;
  double sum = 1.0;
  for (int k = 1; k < 200; ++k) {
    const double next = term * (2.0 * k - 1.0) * (2.0 * k - 1.0) / (8.0 * k * ax);
    if (next >= term) break;
    term = next;
    sum += term;
    if (term < sum * kEps) break;
  }
  return sum / std::sqrt(2.0 * M_PI * ax);
}

double BesselI0(double x) {
  const double ax = std::fabs(x);
  return BesselI0Scaled(x) * std::exp(ax);
}

}  // namespace satrelay
