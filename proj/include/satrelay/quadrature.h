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

#ifndef SATRELAY_QUADRATURE_H_
#define SATRELAY_QUADRATURE_H_

#include <cmath>
#include <functional>
#include <span>
#include <vector>

namespace satrelay {

// Gauss-Chebyshev rule of the first kind: nodes cos((2i-1)pi/(2n)),
// weights pi/n. Applied to a plain integrand by folding the weight function
// back in, int_{-1}^{1} f(x) dx ~ sum_i w_i sqrt(1 - x_i^2) f(x_i).
class ChebyshevRule {
 public:
  explicit ChebyshevRule(int order);

  int order() const { return static_cast<int>(nodes_.size()); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }
  // w_i sqrt(1 - x_i^2), the effective weight for a plain integrand.
  std::span<const double> plain_weights() const { return plain_weights_; }

  template <typename F>
  double Integrate(F&& f) const {
    double sum = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      sum += plain_weights_[i] * f(nodes_[i]);
    }
    return sum;
  }

  // int_lo^hi f(x) dx through the affine map x = (hi-lo)/2 t + (hi+lo)/2.
  template <typename F>
  double Integrate(F&& f, double lo, double hi) const {
    const double half = 0.5 * (hi - lo);
    const double mid = 0.5 * (hi + lo);
    return half * Integrate([&](double t) { return f(half * t + mid); });
  }

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
  std::vector<double> plain_weights_;
};

struct AdaptiveOptions {
  double abs_tol = 1e-8;
  int max_intervals = 10000;
};

struct AdaptiveResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  bool converged = false;
};

// Globally adaptive Gauss-Kronrod (10/21) integration over a finite
// interval: the subinterval with the largest error estimate is bisected
// until the summed estimate falls below abs_tol or the interval cap is hit.
AdaptiveResult IntegrateAdaptive(const std::function<double(double)>& f,
                                 double lo, double hi,
                                 const AdaptiveOptions& options = {});

}  // namespace satrelay

#endif  // SATRELAY_QUADRATURE_H_
