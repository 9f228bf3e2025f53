// SPDX-License-Identifier: Apache-2.0

#include "wdmd/projection.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wdmd/quadrature.hpp"

namespace wdmd {
namespace {

// Linear interpolation of state m at time tq (tq inside the grid range).
double interp_state(const SnapshotSet& snapshots, int m, double tq) {
  const auto& t = snapshots.grid.t;
  const auto n = t.size();
  if (tq <= t(0)) return snapshots.x(m, 0);
  if (tq >= t(n - 1)) return snapshots.x(m, n - 1);
  // First index with t(idx) > tq.
  const double* begin = t.data();
  const double* it = std::upper_bound(begin, begin + n, tq);
  const Eigen::Index hi = it - begin;
  const Eigen::Index lo = hi - 1;
  const double w = (tq - t(lo)) / (t(hi) - t(lo));
  return (1.0 - w) * snapshots.x(m, lo) + w * snapshots.x(m, hi);
}

// Run body(i) for i in [0, count), honoring the execution policy. Bodies
// write disjoint outputs, so the parallel path is bitwise-deterministic.
template <typename Body>
void for_each_index(int count, Exec exec, const Body& body) {
  if (exec == Exec::parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int i = 0; i < count; ++i) body(i);
  } else {
    for (int i = 0; i < count; ++i) body(i);
  }
}

// Gauss-Legendre rules keyed by node count, one per polynomial order pairing
// present in the bases; built up front so parallel loops only read them.
std::map<int, GaussLegendre> rules_for(const BasisSet& a, const BasisSet& b) {
  std::map<int, GaussLegendre> rules;
  for (const auto& fa : a) {
    for (const auto& fb : b) {
      const int n = 2 * std::max(fa.p, fb.p) + 2;
      rules.try_emplace(n, n);
    }
  }
  return rules;
}

}  // namespace

Eigen::MatrixXd data_inner_products(const SnapshotSet& snapshots,
                                    const BasisSet& basis,
                                    const Window& window, Exec exec) {
  check_window(window, snapshots.grid);
  const auto& t = snapshots.grid.t;
  const int n_samples = snapshots.samples();
  const int n_states = snapshots.states();
  bool any_inside = false;
  for (int k = 0; k < n_samples && !any_inside; ++k) {
    any_inside = t(k) >= window.t1 && t(k) <= window.t2;
  }
  if (!any_inside) {
    throw Error(ErrorCode::EmptyWindow, "no samples inside the window");
  }

  const int n_basis = static_cast<int>(basis.size());
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n_basis, n_states);

  for_each_index(n_basis, exec, [&](int j) {
    const Bump& psi = basis[j];
    const double lo = std::max(window.t1, psi.a);
    const double hi = std::min(window.t2, psi.b);
    if (lo >= hi) return;
    // Trapezoid nodes: the intersection endpoints plus every sample strictly
    // inside; data at the endpoints comes from linear interpolation.
    const double* begin = t.data();
    const Eigen::Index first =
        std::upper_bound(begin, begin + n_samples, lo) - begin;
    Eigen::Index last = first;  // one past the final interior sample
    while (last < n_samples && t(last) < hi) ++last;
    for (int m = 0; m < n_states; ++m) {
      double prev_t = lo;
      double prev_v = psi.eval(lo) * interp_state(snapshots, m, lo);
      double acc = 0.0;
      for (Eigen::Index k = first; k < last; ++k) {
        const double cur_t = t(k);
        const double cur_v = psi.eval(cur_t) * snapshots.x(m, k);
        acc += 0.5 * (prev_v + cur_v) * (cur_t - prev_t);
        prev_t = cur_t;
        prev_v = cur_v;
      }
      const double end_v = psi.eval(hi) * interp_state(snapshots, m, hi);
      acc += 0.5 * (prev_v + end_v) * (hi - prev_t);
      a(j, m) = acc;
    }
  });
  return a;
}

Eigen::MatrixXd gram_matrix(const BasisSet& basis, const Window& window,
                            Exec exec) {
  if (basis.empty()) {
    throw Error(ErrorCode::EmptyLayout, "empty basis in gram_matrix");
  }
  const int n_basis = static_cast<int>(basis.size());
  const auto rules = rules_for(basis, basis);
  Eigen::MatrixXd g = Eigen::MatrixXd::Zero(n_basis, n_basis);

  for_each_index(n_basis, exec, [&](int i) {
    const Bump& fi = basis[i];
    for (int j = i; j < n_basis; ++j) {
      const Bump& fj = basis[j];
      const double lo = std::max({window.t1, fi.a, fj.a});
      const double hi = std::min({window.t2, fi.b, fj.b});
      if (lo >= hi) continue;
      const auto& rule = rules.at(2 * std::max(fi.p, fj.p) + 2);
      g(i, j) = integrate(
          [&](double s) { return fi.eval(s) * fj.eval(s); }, lo, hi, rule);
    }
  });
  // Mirror the strictly-upper part; diagonal already in place.
  for (int i = 0; i < n_basis; ++i) {
    for (int j = i + 1; j < n_basis; ++j) g(j, i) = g(i, j);
  }
  return g;
}

CoefficientSolve solve_trial_coefficients(const Eigen::MatrixXd& gram,
                                          const Eigen::MatrixXd& a,
                                          double rcond) {
  if (gram.rows() != a.rows()) {
    throw Error(ErrorCode::ShapeMismatch,
                "gram is " + std::to_string(gram.rows()) + "x" +
                    std::to_string(gram.cols()) + " but data products have " +
                    std::to_string(a.rows()) + " rows");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(gram,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& s = svd.singularValues();
  const double cutoff = s.size() > 0 ? rcond * s(0) : 0.0;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(s.size());
  int rank = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cutoff) {
      inv(k) = 1.0 / s(k);
      ++rank;
    }
  }
  Eigen::MatrixXd c =
      svd.matrixV() * inv.asDiagonal() * (svd.matrixU().transpose() * a);
  return CoefficientSolve{std::move(c), rank < gram.rows()};
}

TrialProjection project(const SnapshotSet& snapshots, const BasisSet& basis,
                        const Window& window, double rcond, Exec exec) {
  const Eigen::MatrixXd a = data_inner_products(snapshots, basis, window, exec);
  const Eigen::MatrixXd g = gram_matrix(basis, window, exec);
  auto solve = solve_trial_coefficients(g, a, rcond);
  return TrialProjection{basis, std::move(solve.c), window,
                         solve.rank_deficient};
}

Eigen::VectorXd reconstruct(const TrialProjection& projection, double t) {
  const Window& w = projection.window;
  const double eps = 1e-12 * std::max({1.0, std::abs(w.t1), std::abs(w.t2)});
  if (t < w.t1 - eps || t > w.t2 + eps) {
    throw Error(ErrorCode::OutOfWindow,
                "t=" + std::to_string(t) + " outside [" + std::to_string(w.t1) +
                    ", " + std::to_string(w.t2) + "]");
  }
  const int n_states = static_cast<int>(projection.coeffs.cols());
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n_states);
  for (size_t j = 0; j < projection.basis.size(); ++j) {
    const double v = projection.basis[j].eval(t);
    if (v != 0.0) out += v * projection.coeffs.row(static_cast<Eigen::Index>(j)).transpose();
  }
  return out;
}

Eigen::MatrixXd reconstruct(const TrialProjection& projection,
                            const Eigen::VectorXd& times) {
  Eigen::MatrixXd out(projection.coeffs.cols(), times.size());
  for (Eigen::Index k = 0; k < times.size(); ++k) {
    out.col(k) = reconstruct(projection, times(k));
  }
  return out;
}

Eigen::VectorXd residual_rms(const TrialProjection& projection,
                             const SnapshotSet& snapshots) {
  const auto& t = snapshots.grid.t;
  Eigen::VectorXd sq = Eigen::VectorXd::Zero(snapshots.states());
  int used = 0;
  for (int k = 0; k < snapshots.samples(); ++k) {
    if (t(k) < projection.window.t1 || t(k) > projection.window.t2) continue;
    const Eigen::VectorXd r = reconstruct(projection, t(k)) - snapshots.x.col(k);
    sq += r.cwiseProduct(r);
    ++used;
  }
  if (used == 0) {
    throw Error(ErrorCode::EmptyWindow, "no samples inside the window");
  }
  return (sq / used).cwiseSqrt();
}

}  // namespace wdmd
