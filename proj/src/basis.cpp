// SPDX-License-Identifier: Apache-2.0

#include "wdmd/basis.hpp"

#include <cmath>
#include <string>

namespace wdmd {
namespace {

// x^n for small non-negative integer n; avoids pow() in the hot quadrature path.
inline double ipow(double x, int n) {
  double r = 1.0;
  for (int k = 0; k < n; ++k) r *= x;
  return r;
}

}  // namespace

Bump::Bump(double a_, double b_, int p_) : a(a_), b(b_), p(p_) {
  c = ipow(2.0 / (b - a), 2 * p);
}

double Bump::eval(double t) const {
  if (t <= a || t >= b) return 0.0;
  return c * ipow(t - a, p) * ipow(b - t, p);
}

double Bump::deriv(double t) const {
  if (t <= a || t >= b) return 0.0;
  return c * p * ipow(t - a, p - 1) * ipow(b - t, p - 1) * ((b - t) - (t - a));
}

BasisSet build_layout(const std::vector<int>& counts,
                      const std::vector<double>& overlaps, int p,
                      const Window& window) {
  if (counts.empty()) {
    throw Error(ErrorCode::EmptyLayout, "no tier counts given");
  }
  if (overlaps.size() != counts.size()) {
    throw Error(ErrorCode::EmptyLayout,
                std::to_string(counts.size()) + " tier counts but " +
                    std::to_string(overlaps.size()) + " overlaps");
  }
  if (p < 1) {
    throw Error(ErrorCode::EmptyLayout,
                "polynomial order must be >= 1, got " + std::to_string(p));
  }
  BasisSet out;
  for (size_t k = 0; k < counts.size(); ++k) {
    const int count = counts[k];
    const double v = overlaps[k];
    if (count < 1) {
      throw Error(ErrorCode::EmptyLayout,
                  "tier count must be >= 1, got " + std::to_string(count));
    }
    if (v < 0.0) {
      throw Error(ErrorCode::EmptyLayout,
                  "overlap must be >= 0, got " + std::to_string(v));
    }
    if (count == 1) {
      const double center = 0.5 * (window.t1 + window.t2);
      const double half = 0.5 * window.length() * (1.0 + v);
      out.emplace_back(center - half, center + half, p);
      continue;
    }
    const double d = window.length() / (count - 1);
    const double half = 0.5 * d * (1.0 + v);
    for (int i = 0; i < count; ++i) {
      const double center = window.t1 + i * d;
      out.emplace_back(center - half, center + half, p);
    }
  }
  return out;
}

}  // namespace wdmd
