// SPDX-License-Identifier: Apache-2.0
//
// Gauss-Legendre rules for the basis-basis integrals. Bump products are
// polynomials of known degree on each support intersection, so a rule of
// sufficient order integrates them exactly (up to roundoff).

#pragma once

#include <Eigen/Dense>

namespace wdmd {

/// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending.
struct GaussLegendre {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;

  explicit GaussLegendre(int n);
};

/// Integrate f over [lo, hi] with the given rule.
template <typename F>
double integrate(const F& f, double lo, double hi, const GaussLegendre& rule) {
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  double acc = 0.0;
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    acc += rule.weights(k) * f(mid + half * rule.nodes(k));
  }
  return half * acc;
}

}  // namespace wdmd
