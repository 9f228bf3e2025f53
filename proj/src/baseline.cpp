// SPDX-License-Identifier: Apache-2.0

#include "wdmd/baseline.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <complex>
#include <string>

namespace wdmd {

ExactDmdModel fit_exact_dmd(const SnapshotSet& snapshots, int rank) {
  const auto& t = snapshots.grid.t;
  const int n_samples = snapshots.samples();
  const int n_states = snapshots.states();
  const double dt = (t(n_samples - 1) - t(0)) / (n_samples - 1);
  for (int k = 0; k + 1 < n_samples; ++k) {
    if (std::abs((t(k + 1) - t(k)) - dt) > 1e-9 * std::abs(dt)) {
      throw Error(ErrorCode::NonUniformGrid,
                  "sample spacing varies at index " + std::to_string(k + 1) +
                      "; exact DMD needs an equispaced grid");
    }
  }
  const int max_rank = std::min(n_states, n_samples - 1);
  if (rank < 1 || rank > max_rank) {
    throw Error(ErrorCode::RankTooLarge,
                "rank " + std::to_string(rank) + " outside [1, " +
                    std::to_string(max_rank) + "]");
  }

  const auto x1 = snapshots.x.leftCols(n_samples - 1);
  const auto x2 = snapshots.x.rightCols(n_samples - 1);
  Eigen::BDCSVD<Eigen::MatrixXd> svd(x1,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  int r = 0;
  while (r < rank && s(r) > s(0) * 1e-13) ++r;
  if (r == 0) throw Error(ErrorCode::ZeroMatrix, "snapshot matrix is zero");

  const Eigen::MatrixXd u = svd.matrixU().leftCols(r);
  const Eigen::MatrixXd v = svd.matrixV().leftCols(r);
  const Eigen::VectorXd sinv = s.head(r).cwiseInverse();
  const Eigen::MatrixXd a_discrete =
      u.transpose() * x2 * v * sinv.asDiagonal();

  Eigen::EigenSolver<Eigen::MatrixXd> solver(a_discrete);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigFailure, "eigenvalue iteration did not converge");
  }
  Eigen::VectorXcd mu = solver.eigenvalues();
  Eigen::VectorXcd lambda(mu.size());
  for (Eigen::Index k = 0; k < mu.size(); ++k) {
    lambda(k) = std::log(mu(k)) / dt;  // principal branch
  }
  // Order everything by the continuous spectrum.
  const auto order = spectrum_order(lambda);
  ExactDmdModel model;
  model.discrete.resize(mu.size());
  model.continuous.resize(mu.size());
  Eigen::MatrixXcd w(r, r);
  for (size_t k = 0; k < order.size(); ++k) {
    const auto dst = static_cast<Eigen::Index>(k);
    model.discrete(dst) = mu(order[k]);
    model.continuous(dst) = lambda(order[k]);
    w.col(dst) = solver.eigenvectors().col(order[k]);
  }
  model.modes = (x2 * v * sinv.asDiagonal()).cast<std::complex<double>>() * w;
  for (Eigen::Index k = 0; k < model.modes.cols(); ++k) {
    const double norm = model.modes.col(k).norm();
    if (norm == 0.0) continue;
    // Same convention as the weak pipeline: unit norm, largest entry
    // rotated onto the positive real axis.
    Eigen::Index imax = 0;
    model.modes.col(k).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = model.modes(imax, k);
    model.modes.col(k) *= std::abs(pivot) / (pivot * norm);
  }
  model.dt = dt;
  model.rank = r;
  return model;
}

}  // namespace wdmd
