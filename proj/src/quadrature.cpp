// SPDX-License-Identifier: Apache-2.0

#include "wdmd/quadrature.hpp"

#include <cmath>
#include <stdexcept>

namespace wdmd {

// Nodes are the roots of the Legendre polynomial P_n, found by Newton
// iteration from the Chebyshev-like initial guess; weights follow from the
// derivative at the root. Symmetric pairs are filled together.
GaussLegendre::GaussLegendre(int n) {
  if (n < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  nodes.resize(n);
  weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double x = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      // Three-term recurrence for P_n(x) and P_{n-1}(x).
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    // Recompute derivative at the converged root for the weight.
    {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2 * k - 1) * x * p1 - (k - 1) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    nodes(i) = -x;            // cos guess starts near +1; store ascending
    nodes(n - 1 - i) = x;
    weights(i) = w;
    weights(n - 1 - i) = w;
  }
  if (n % 2 == 1) nodes(half - 1) = 0.0;  // exact center for odd rules
}

}  // namespace wdmd
