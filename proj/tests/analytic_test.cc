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

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include <boost/math/distributions/non_central_chi_squared.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "gtest/gtest.h"
#include "satrelay/errors.h"
#include "satrelay/montecarlo.h"
#include "satrelay/quadrature.h"
#include "satrelay/rng.h"
#include "satrelay/specfun.h"
#include "test_models.h"

namespace satrelay {
namespace {

using boost::math::quadrature::gauss_kronrod;
using testing::FromDb;

constexpr std::int64_t kTrials = 1000000;

// Nested Gauss-Kronrod over a finite interval, independent of the library's
// own adaptive driver.
double Kronrod(const std::function<double(double)>& f, double lo, double hi,
               double tol = 1e-10) {
  return gauss_kronrod<double, 31>::integrate(f, lo, hi, 12, tol);
}

// Receiver-averaged coverage with an arbitrary Marcum function plugged in.
double CoverageIntegral(const GeometryParams& g, const RicianParams& r,
                        double threshold,
                        double (*marcum)(double, double)) {
  const double a = std::sqrt(2.0 * r.k_factor);
  const double scale = 2.0 * (1.0 + r.k_factor) * threshold / r.mean_power;
  const double lo = g.relay_altitude;
  const double hi = std::hypot(g.relay_altitude, g.coverage_radius);
  AdaptiveOptions opts;
  opts.abs_tol = 1e-13;
  const double v = IntegrateAdaptive(
      [&](double x) {
        return x * marcum(a, std::sqrt(scale * std::pow(x, r.path_loss)));
      },
      lo, hi, opts).value;
  return 2.0 * v / (g.coverage_radius * g.coverage_radius);
}

double RatioCdfOracle(double z, const InterferenceParams& ip) {
  // P(X <= z Y) with X the relay gain and Y exponential of rate gamma3;
  // 2(1+K)X/Omega_X is noncentral chi-square with 2 dof.
  boost::math::non_central_chi_squared chi(2.0, 2.0 * ip.k_factor);
  const double c = 2.0 * (1.0 + ip.k_factor) / ip.omega_x;
  auto integrand = [&](double y) {
    return boost::math::cdf(chi, c * z * y) * ip.gamma3 * std::exp(-ip.gamma3 * y);
  };
  return gauss_kronrod<double, 61>::integrate(
      integrand, 0.0, std::numeric_limits<double>::infinity(), 15, 1e-13);
}

TEST(QuadratureOrdersTest, Validation) {
  QuadratureOrders ok;
  EXPECT_NO_THROW(ok.Validate());
  QuadratureOrders bad{0, 50, 50, 50};
  EXPECT_THROW(bad.Validate(), DomainError);
  EXPECT_EQ(ok.Doubled().h, 100);
}

TEST(CoverageNiTest, ThresholdLimits) {
  const auto s = testing::CoverageNi();
  EXPECT_GE(CoverageNonInterferenceExact(s.model.geometry, s.model.relay,
                                         FromDb(-80.0)).value,
            0.9999);
  EXPECT_LT(CoverageNonInterferenceExact(s.model.geometry, s.model.relay,
                                         FromDb(80.0)).value,
            1e-12);
}

TEST(CoverageNiTest, ExactMatchesDefiningIntegral) {
  const auto s = testing::CoverageNi();
  for (double th_db : {-10.0, 0.0, 7.0}) {
    const double th = FromDb(th_db);
    EXPECT_NEAR(
        CoverageNonInterferenceExact(s.model.geometry, s.model.relay, th).value,
        CoverageIntegral(s.model.geometry, s.model.relay, th, &MarcumQ1), 1e-8);
  }
}

TEST(CoverageNiTest, ExactAgreesWithSimulation) {
  for (double omega_db : {5.0, 25.0}) {
    const auto s = testing::CoverageNi(omega_db);
    const double p =
        CoverageNonInterferenceExact(s.model.geometry, s.model.relay, 1.0).value;
    const McEstimate mc =
        testing::Simulate(s, McScenario::kCoverageNi, kTrials, 101);
    // Standard error under the analytic value; stays meaningful when the
    // simulated hit count is tiny.
    const double se = std::sqrt(p * (1.0 - p) / kTrials);
    EXPECT_NEAR(mc.mean, p, 3.0 * se) << "Omega_R=" << omega_db << " dB";
  }
}

TEST(CoverageNiTest, ClosedFormIsExactForFittedIntegrand) {
  for (double h1 : {5.0, 10.0, 20.0}) {
    for (double l : {10.0, 20.0}) {
      for (double omega_db = 0.0; omega_db <= 60.0; omega_db += 5.0) {
        auto s = testing::CoverageNi(omega_db);
        s.model.geometry.relay_altitude = h1;
        s.model.geometry.coverage_radius = l;
        const double closed = CoverageNonInterferenceApprox(
            s.model.geometry, s.model.relay, 1.0).value;
        const double fitted = CoverageIntegral(s.model.geometry, s.model.relay,
                                               1.0, &MarcumQ1Approx);
        EXPECT_NEAR(closed, fitted, 1e-8)
            << "H1=" << h1 << " L=" << l << " Omega_R=" << omega_db;
      }
    }
  }
}

TEST(CoverageNiTest, ClosedFormNearExact) {
  for (double h1 : {5.0, 10.0, 20.0}) {
    for (double l : {10.0, 20.0}) {
      for (double omega_db = 0.0; omega_db <= 60.0; omega_db += 5.0) {
        auto s = testing::CoverageNi(omega_db);
        s.model.geometry.relay_altitude = h1;
        s.model.geometry.coverage_radius = l;
        const double closed = CoverageNonInterferenceApprox(
            s.model.geometry, s.model.relay, 1.0).value;
        const double exact = CoverageNonInterferenceExact(
            s.model.geometry, s.model.relay, 1.0).value;
        EXPECT_NEAR(closed, exact, 0.02)
            << "H1=" << h1 << " L=" << l << " Omega_R=" << omega_db;
      }
    }
  }
}

TEST(CoverageNiTest, NonIncreasingInThreshold) {
  const auto s = testing::CoverageNi();
  double prev_exact = 1.0, prev_approx = 1.0;
  for (int i = 0; i < 20; ++i) {
    const double th = FromDb(-20.0 + 2.5 * i);
    const double exact =
        CoverageNonInterferenceExact(s.model.geometry, s.model.relay, th).value;
    const double approx =
        CoverageNonInterferenceApprox(s.model.geometry, s.model.relay, th).value;
    EXPECT_LE(exact, prev_exact + 1e-9);
    EXPECT_LE(approx, prev_approx + 1e-9);
    prev_exact = exact;
    prev_approx = approx;
  }
}

TEST(CoverageNiTest, GeneralPathLossOnExactPath) {
  auto s = testing::CoverageNi();
  s.model.relay.path_loss = 3.0;
  const double p =
      CoverageNonInterferenceExact(s.model.geometry, s.model.relay, 1e-2).value;
  EXPECT_NEAR(p, CoverageIntegral(s.model.geometry, s.model.relay, 1e-2, &MarcumQ1),
              1e-8);
}

TEST(RatioCdfTest, Limits) {
  for (double k : {0.01, 0.1, 1.0}) {
    const auto ip = InterferenceParams::FromRatio(k, 1.0, 2.0);
    EXPECT_LT(InterferenceRatioCdf(1e-8, ip), 1e-6);
    EXPECT_NEAR(InterferenceRatioCdf(1e8, ip), 1.0, 1e-6);
  }
  const auto ip = InterferenceParams::FromRatio(0.1, 1.0, 2.0);
  EXPECT_THROW(InterferenceRatioCdf(0.0, ip), DomainError);
  EXPECT_THROW(InterferenceRatioCdf(-1.0, ip), DomainError);
}

TEST(RatioCdfTest, MatchesMixtureIntegral) {
  for (double k : {0.0, 0.1, 2.0}) {
    const auto ip = InterferenceParams::FromRatio(k, 1.3, 2.0);
    for (double z : {0.05, 0.4, 1.5, 9.0}) {
      EXPECT_NEAR(InterferenceRatioCdf(z, ip), RatioCdfOracle(z, ip), 1e-10)
          << "K=" << k << " z=" << z;
    }
  }
}

TEST(RatioCdfTest, MatchesTwoVariableSimulation) {
  const auto ip = InterferenceParams::FromRatio(0.1, 1.0, 2.0);
  const RicianParams x_law{0.1, 1.0, 2.0};
  CounterRng rng(202, 0);
  std::int64_t hits = 0;
  for (std::int64_t i = 0; i < kTrials; ++i) {
    const double x = SampleRicianPower(rng, x_law);
    const double y = SampleRayleighPower(rng, ip.gamma3);
    if (x <= 1.5 * y) ++hits;
  }
  const double p = InterferenceRatioCdf(1.5, ip);
  const double mean = static_cast<double>(hits) / kTrials;
  EXPECT_NEAR(mean, p, 3.0 * std::sqrt(p * (1 - p) / kTrials));
}

// Brute-force average of the ratio law over both positions, written from
// scratch: angle uniform on [0, pi] by symmetry, radii with densities
// 2r/T^2 and 2r/L^2.
double SirCdfOracle(double x, const GeometryParams& g,
                    const InterferenceParams& ip) {
  auto ratio_cdf = [&](double z) {
    const double theta = 1.0 / (ip.gamma2 + ip.gamma3 / z);
    return ip.gamma1 * theta * std::exp(ip.gamma4 * theta);
  };
  const double l = g.coverage_radius, t = g.interferer_radius;
  auto over_receiver = [&](double ri) {
    auto over_interferer = [&](double rI) {
      auto over_angle = [&](double a) {
        const double u2 = ri * ri + rI * rI - 2.0 * ri * rI * std::cos(a);
        const double d2 = g.relay_altitude * g.relay_altitude + ri * ri;
        if (u2 <= 0.0) return 1.0;
        return ratio_cdf(x * d2 / u2);
      };
      return Kronrod(over_angle, 0.0, M_PI, 1e-9) / M_PI * 2.0 * rI / (t * t);
    };
    return Kronrod(over_interferer, 0.0, t, 1e-8) * 2.0 * ri / (l * l);
  };
  return Kronrod(over_receiver, 0.0, l, 1e-7);
}

TEST(SirCdfTest, MatchesBruteForceIntegration) {
  const auto s = testing::CoverageIs();
  const double v = SirCdf(1.0, s.model.geometry, s.interference, s.orders);
  EXPECT_NEAR(v, SirCdfOracle(1.0, s.model.geometry, s.interference), 5e-3);
}

TEST(SirCdfTest, MonotoneAndBounded) {
  const auto s = testing::CoverageIs();
  double prev = 0.0;
  for (int i = 0; i < 30; ++i) {
    const double x = FromDb(-30.0 + 2.0 * i);
    const double v = SirCdf(x, s.model.geometry, s.interference, s.orders);
    EXPECT_GE(v, -1e-3);
    EXPECT_LE(v, 1.0 + 1e-3);
    EXPECT_GE(v, prev - 1e-3);
    prev = v;
  }
}

TEST(SirCdfTest, OrderRefinementIsSmall) {
  const auto s = testing::CoverageIs();
  for (double x : {0.1, 1.0, 10.0}) {
    const double base = SirCdf(x, s.model.geometry, s.interference, s.orders);
    const double fine =
        SirCdf(x, s.model.geometry, s.interference, s.orders.Doubled());
    EXPECT_LT(std::abs(base - fine), 1e-3) << "x=" << x;
  }
}

TEST(SirCdfTest, RejectsUnsupportedInputs) {
  auto s = testing::CoverageIs();
  EXPECT_THROW(SirCdf(0.0, s.model.geometry, s.interference, s.orders),
               DomainError);
  s.interference.path_loss = 3.0;
  EXPECT_THROW(SirCdf(1.0, s.model.geometry, s.interference, s.orders),
               UnsupportedError);
}

TEST(CoverageIsTest, LimitsAndRefinement) {
  const auto s = testing::CoverageIs();
  EXPECT_GT(CoverageInterference(s.model.geometry, s.interference, 1e-9,
                                 s.orders).value,
            1.0 - 1e-6);
  const ProbabilityResult r = CoverageInterference(
      s.model.geometry, s.interference, 1.0, s.orders, true);
  ASSERT_TRUE(r.refinement_delta.has_value());
  EXPECT_LT(*r.refinement_delta, 1e-3);
  EXPECT_LT(std::abs(r.value - r.unclamped), 1e-3);
}

TEST(CoverageIsTest, AgreesWithSimulation) {
  const auto s = testing::CoverageIs();
  const double p =
      CoverageInterference(s.model.geometry, s.interference, 1.0, s.orders).value;
  const McEstimate mc = testing::Simulate(s, McScenario::kCoverageIs, kTrials, 303);
  EXPECT_NEAR(mc.mean, p, 0.01);
}

TEST(CoverageIsTest, WiderInterfererDiskHelps) {
  auto s = testing::CoverageIs();
  const double narrow =
      CoverageInterference(s.model.geometry, s.interference, 1.0, s.orders).value;
  s.model.geometry.interferer_radius = 60.0;
  const double wide =
      CoverageInterference(s.model.geometry, s.interference, 1.0, s.orders).value;
  EXPECT_GT(wide, narrow);
}

TEST(CoverageIsTest, NonIncreasingInThreshold) {
  const auto s = testing::CoverageIs();
  double prev = 1.0;
  for (int i = 0; i < 12; ++i) {
    const double v = CoverageInterference(s.model.geometry, s.interference,
                                          FromDb(-15.0 + 3.0 * i), s.orders)
                         .value;
    EXPECT_LE(v, prev + 1e-9);
    prev = v;
  }
}

TEST(OutageSrTest, ConditionalIdentityAndLimit) {
  const auto s = testing::OutageSr();
  const auto& sr = s.model.satellite;
  EXPECT_LT(OutageSrConditional(1500.0, sr, 1e-12), 1e-9);
  for (double d0 : {200.0, 1500.0, 2500.0}) {
    EXPECT_EQ(OutageSrConditional(d0, sr, 2.0),
              ShadowedRicianCdf(2.0 * d0 * d0, sr));
  }
}

TEST(OutageSrTest, ConditionalAgreesWithFadingSimulation) {
  auto s = testing::OutageSr();
  s.model.fixed_satellite_distance = 1500.0;
  const double p = OutageSrConditional(1500.0, s.model.satellite, 1.0);
  const McEstimate mc = testing::Simulate(s, McScenario::kOutageSr, kTrials, 404);
  EXPECT_NEAR(mc.mean, p, 3.0 * std::sqrt(p * (1 - p) / kTrials));
}

TEST(OutageSrTest, MatchesAveragedConditional) {
  const auto s = testing::OutageSr();
  const GeometryParams& g = s.model.geometry;
  const D0SquaredSupport sup = SatelliteSupport(g);
  AdaptiveOptions opts;
  opts.abs_tol = 1e-10;
  const double ref = IntegrateAdaptive(
      [&](double x) {
        return ShadowedRicianCdf(x, s.model.satellite) * D0SquaredPdf(x, g);
      },
      sup.d0_min_sq, sup.d0_max_sq, opts).value;
  const ProbabilityResult r =
      OutageSr(g, s.model.satellite, 1.0, s.orders, true);
  EXPECT_NEAR(r.value, ref, 1e-3);
  ASSERT_TRUE(r.refinement_delta.has_value());
  EXPECT_LT(*r.refinement_delta, 1e-3);
}

TEST(OutageSrTest, AgreesWithSimulation) {
  const auto s = testing::OutageSr();
  const double p = OutageSr(s.model.geometry, s.model.satellite, 1.0, s.orders).value;
  const McEstimate mc = testing::Simulate(s, McScenario::kOutageSr, kTrials, 505);
  EXPECT_NEAR(mc.mean, p, 0.01);
}

TEST(OutageSrTest, CollapsedShellMatchesConditional) {
  auto s = testing::OutageSr();
  GeometryParams& g = s.model.geometry;
  g.apex_angle = 1e-4;
  g.outer_radius = g.inner_radius + 1e-3;
  const double d0 = g.inner_radius - g.RelayRadius();
  EXPECT_NEAR(OutageSr(g, s.model.satellite, 1.0, s.orders).value,
              OutageSrConditional(d0, s.model.satellite, 1.0), 1e-4);
}

TEST(OutageSrTest, Trends) {
  const auto base = testing::OutageSr();
  auto outage = [&](double psi, double threshold, double omega, double ps) {
    GeometryParams g = base.model.geometry;
    g.apex_angle = psi;
    const auto sr = ShadowedRicianParams::Make(
        10.0, 2, omega, ps / base.model.noise_power);
    return OutageSr(g, sr, threshold, base.orders).value;
  };
  double prev = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double v = outage(M_PI / 6 + (M_PI / 3) * i / 9.0, 1.0, 1.0, 1000.0);
    EXPECT_GE(v, prev - 1e-9) << "Psi step " << i;
    prev = v;
  }
  prev = 0.0;
  for (int i = 0; i < 10; ++i) {
    const double v = outage(M_PI / 3, FromDb(-10.0 + 2.0 * i), 1.0, 1000.0);
    EXPECT_GE(v, prev - 1e-9) << "threshold step " << i;
    prev = v;
  }
  prev = 1.0;
  for (int i = 0; i < 10; ++i) {
    const double v = outage(M_PI / 3, 1.0, 0.2 + 0.5 * i, 1000.0);
    EXPECT_LE(v, prev + 1e-9) << "Omega step " << i;
    prev = v;
  }
  prev = 1.0;
  for (int i = 0; i < 10; ++i) {
    const double v = outage(M_PI / 3, 1.0, 1.0, FromDb(20.0 + 2.0 * i));
    EXPECT_LE(v, prev + 1e-9) << "P_S step " << i;
    prev = v;
  }
}

TEST(OutageSrTest, RequiresFreeSpacePathLoss) {
  auto s = testing::OutageSr();
  const auto sr = ShadowedRicianParams::Make(10.0, 2, 1.0, 1e6, 3.0);
  EXPECT_THROW(OutageSr(s.model.geometry, sr, 1.0, s.orders), UnsupportedError);
}

TEST(EndToEndTest, CombineHops) {
  EXPECT_EQ(CombineHops(1.0, 0.0), 0.0);
  EXPECT_EQ(CombineHops(0.0, 0.3), 1.0);
  EXPECT_NEAR(CombineHops(0.8, 0.25), 1.0 - 0.8 * 0.75, 1e-15);
}

TEST(EndToEndTest, AgreesWithJointSimulation) {
  const auto s = testing::EndToEnd();
  const EndToEndResult ni =
      EndToEndOutage(testing::EndToEndFor(s, RelayScenario::kNonInterference, true));
  const EndToEndResult is =
      EndToEndOutage(testing::EndToEndFor(s, RelayScenario::kInterference, false));
  EXPECT_NEAR(ni.outage.value,
              CombineHops(ni.coverage.value, ni.satellite_outage.value), 1e-15);
  EXPECT_NEAR(testing::Simulate(s, McScenario::kEndToEndNi, kTrials, 606).mean,
              ni.outage.value, 0.015);
  EXPECT_NEAR(testing::Simulate(s, McScenario::kEndToEndIs, kTrials, 607).mean,
              is.outage.value, 0.015);
}

TEST(EndToEndTest, ClosedFormHopIsDefault) {
  const auto s = testing::EndToEnd();
  const EndToEndResult r =
      EndToEndOutage(testing::EndToEndFor(s, RelayScenario::kNonInterference, false));
  EXPECT_EQ(r.coverage.method, Method::kClosedApprox);
  EXPECT_EQ(r.satellite_outage.method, Method::kQuadrature);
}

}  // namespace
}  // namespace satrelay
