// SPDX-License-Identifier: Apache-2.0
//
// Compactly supported polynomial bump functions and the count/overlap layout
// that tiles an analysis window with them.

#pragma once

#include <vector>

#include "wdmd/core.hpp"

namespace wdmd {

/// One bump: C (t-a)^p (b-t)^p on (a, b), zero elsewhere, with
/// C = (2/(b-a))^(2p) so the peak value at the midpoint is exactly 1.
struct Bump {
  double a;
  double b;
  int p;
  double c;  // normalization constant

  Bump(double a_, double b_, int p_);

  double eval(double t) const;
  /// d/dt of eval: C p (t-a)^(p-1) (b-t)^(p-1) ((b-t) - (t-a)) inside (a, b).
  double deriv(double t) const;
};

using BasisSet = std::vector<Bump>;

/// Tile [t1, t2] with bump tiers. Tier k places counts[k] bumps with centers
/// uniform on [t1, t2] (spacing d = (t2-t1)/(count-1)) and half-width
/// d/2 * (1 + overlap). A single-bump tier centers on the midpoint with
/// half-width (t2-t1)/2 * (1 + overlap). Supports may extend beyond the
/// window; every integral later truncates to it.
/// Throws EmptyLayout for empty/invalid counts or mismatched overlaps.
BasisSet build_layout(const std::vector<int>& counts,
                      const std::vector<double>& overlaps, int p,
                      const Window& window);

/// Convenience bundle describing a layout before it is built.
struct LayoutSpec {
  std::vector<int> counts;
  std::vector<double> overlaps;
  int p = 2;
};

inline BasisSet build_layout(const LayoutSpec& spec, const Window& window) {
  return build_layout(spec.counts, spec.overlaps, spec.p, window);
}

}  // namespace wdmd
