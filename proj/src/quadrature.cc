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

#include "satrelay/quadrature.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "satrelay/errors.h"

namespace satrelay {

ChebyshevRule::ChebyshevRule(int order) {
  if (order < 1) throw DomainError("Chebyshev rule order must be >= 1");
  nodes_.resize(order);
  weights_.assign(order, M_PI / order);
  plain_weights_.resize(order);
  for (int i = 0; i < order; ++i) {
    nodes_[i] = std::cos((2.0 * (i + 1) - 1.0) * M_PI / (2.0 * order));
    // sin of the node angle equals sqrt(1 - x^2) without the cancellation.
    plain_weights_[i] =
        weights_[i] * std::sin((2.0 * (i + 1) - 1.0) * M_PI / (2.0 * order));
  }
}

namespace {

struct Piece {
  double lo;
  double hi;
  double value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

// 21-point Kronrod rule with the embedded 10-point Gauss rule. The raw
// Kronrod-Gauss difference can vanish by accident on a piece holding a kink,
// so it is rescaled by the mean absolute deviation of the integrand, the
// classic QUADPACK estimate, which makes false convergence far less likely.
Piece EvaluatePiece(const std::function<double(double)>& f, double lo,
                    double hi) {
  using Kronrod = boost::math::quadrature::gauss_kronrod<double, 21>;
  using Gauss = boost::math::quadrature::gauss<double, 10>;
  const auto& x = Kronrod::abscissa();
  const auto& wk = Kronrod::weights();
  const auto& wg = Gauss::weights();
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);

  std::array<double, 21> values;
  values[0] = f(mid);
  for (std::size_t i = 1; i < x.size(); ++i) {
    values[2 * i - 1] = f(mid - half * x[i]);
    values[2 * i] = f(mid + half * x[i]);
  }
  double kronrod = wk[0] * values[0];
  double gauss = 0.0;
  double abs_sum = wk[0] * std::abs(values[0]);
  for (std::size_t i = 1; i < x.size(); ++i) {
    const double pair = values[2 * i - 1] + values[2 * i];
    kronrod += wk[i] * pair;
    abs_sum += wk[i] * (std::abs(values[2 * i - 1]) + std::abs(values[2 * i]));
    // Gauss nodes sit at the odd Kronrod positions.
    if (i % 2 == 1) gauss += wg[i / 2] * pair;
  }
  const double mean = 0.5 * kronrod;
  double deviation = wk[0] * std::abs(values[0] - mean);
  for (std::size_t i = 1; i < x.size(); ++i) {
    deviation += wk[i] * (std::abs(values[2 * i - 1] - mean) +
                          std::abs(values[2 * i] - mean));
  }
  const double scale = std::abs(half);
  deviation *= scale;
  abs_sum *= scale;
  double error = std::abs((kronrod - gauss) * half);
  if (deviation > 0.0 && error > 0.0) {
    error = deviation * std::min(1.0, std::pow(200.0 * error / deviation, 1.5));
  }
  error = std::max(error, 50.0 * std::numeric_limits<double>::epsilon() * abs_sum);
  return {lo, hi, kronrod * half, error};
}

}  // namespace

AdaptiveResult IntegrateAdaptive(const std::function<double(double)>& f,
                                 double lo, double hi,
                                 const AdaptiveOptions& options) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    throw DomainError("adaptive quadrature needs finite limits");
  }
  AdaptiveResult result;
  if (lo == hi) {
    result.converged = true;
    return result;
  }
  std::priority_queue<Piece> pieces;
  pieces.push(EvaluatePiece(f, lo, hi));
  double total_error = pieces.top().error;
  int count = 1;
  while (total_error > options.abs_tol && count < options.max_intervals) {
    const Piece worst = pieces.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (mid <= worst.lo || mid >= worst.hi) break;
    pieces.pop();
    const Piece left = EvaluatePiece(f, worst.lo, mid);
    const Piece right = EvaluatePiece(f, mid, worst.hi);
    total_error += left.error + right.error - worst.error;
    pieces.push(left);
    pieces.push(right);
    ++count;
  }
  // Resum from scratch; the running error total drifts under cancellation.
  double value = 0.0;
  double error = 0.0;
  while (!pieces.empty()) {
    value += pieces.top().value;
    error += pieces.top().error;
    pieces.pop();
  }
  result.value = value;
  result.error_estimate = error;
  result.intervals = count;
  result.converged = error <= options.abs_tol;
  return result;
}

}  // namespace satrelay
