// SPDX-License-Identifier: Apache-2.0

#include "wdmd/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace wdmd {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::DuplicateTime: return "DuplicateTime";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonFiniteData: return "NonFiniteData";
    case ErrorCode::EmptyWindow: return "EmptyWindow";
    case ErrorCode::EmptyLayout: return "EmptyLayout";
    case ErrorCode::WindowMismatch: return "WindowMismatch";
    case ErrorCode::OutOfWindow: return "OutOfWindow";
    case ErrorCode::ZeroMatrix: return "ZeroMatrix";
    case ErrorCode::EigFailure: return "EigFailure";
    case ErrorCode::SingularStep: return "SingularStep";
    case ErrorCode::NonUniformGrid: return "NonUniformGrid";
    case ErrorCode::RankTooLarge: return "RankTooLarge";
    case ErrorCode::NonDiagonalizable: return "NonDiagonalizable";
    case ErrorCode::SingularYMinus: return "SingularYMinus";
    case ErrorCode::GridMismatch: return "GridMismatch";
    case ErrorCode::ZeroNorm: return "ZeroNorm";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "UnknownError";
}

SnapshotSet validate_snapshots(const Eigen::MatrixXd& x,
                               const Eigen::VectorXd& t) {
  const auto n = t.size();
  if (n < 2) {
    throw Error(ErrorCode::ShapeMismatch,
                "need at least 2 samples, got " + std::to_string(n));
  }
  if (x.cols() != n) {
    throw Error(ErrorCode::ShapeMismatch,
                "data has " + std::to_string(x.cols()) + " columns but grid has " +
                    std::to_string(n) + " times");
  }
  for (Eigen::Index i = 0; i + 1 < n; ++i) {
    if (t(i + 1) == t(i)) {
      throw Error(ErrorCode::DuplicateTime,
                  "repeated sample time t=" + std::to_string(t(i)));
    }
    if (t(i + 1) < t(i)) {
      throw Error(ErrorCode::NonMonotoneTime,
                  "time decreases at index " + std::to_string(i + 1));
    }
  }
  if (!t.allFinite() || !x.allFinite()) {
    throw Error(ErrorCode::NonFiniteData, "non-finite entry in snapshots");
  }
  return SnapshotSet{TimeGrid{t}, x};
}

void check_window(const Window& window, const TimeGrid& grid) {
  if (!(window.t1 < window.t2)) {
    throw Error(ErrorCode::EmptyWindow,
                "window [" + std::to_string(window.t1) + ", " +
                    std::to_string(window.t2) + "] has no interior");
  }
  const double span = std::max({1.0, std::abs(grid.front()), std::abs(grid.back())});
  const double eps = 1e-12 * span;
  if (window.t1 < grid.front() - eps || window.t2 > grid.back() + eps) {
    throw Error(ErrorCode::OutOfWindow,
                "window exceeds the sampled range [" +
                    std::to_string(grid.front()) + ", " +
                    std::to_string(grid.back()) + "]");
  }
}

std::vector<int> spectrum_order(const Eigen::VectorXcd& eigenvalues) {
  std::vector<int> order(eigenvalues.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    const auto &za = eigenvalues(a), &zb = eigenvalues(b);
    if (za.real() != zb.real()) return za.real() > zb.real();
    return za.imag() > zb.imag();
  });
  return order;
}

void sort_spectrum(Eigen::VectorXcd& eigenvalues) {
  const auto order = spectrum_order(eigenvalues);
  Eigen::VectorXcd sorted(eigenvalues.size());
  for (size_t k = 0; k < order.size(); ++k) sorted(static_cast<Eigen::Index>(k)) = eigenvalues(order[k]);
  eigenvalues = sorted;
}

bool conjugate_closed(const Eigen::VectorXcd& eigenvalues, double rtol) {
  const auto n = eigenvalues.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto z = eigenvalues(i);
    const double tol = rtol * std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= tol) continue;  // effectively real
    bool mated = false;
    for (Eigen::Index j = 0; j < n && !mated; ++j) {
      mated = j != i && std::abs(eigenvalues(j) - std::conj(z)) <= tol;
    }
    if (!mated) return false;
  }
  return true;
}

}  // namespace wdmd
