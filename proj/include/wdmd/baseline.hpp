// SPDX-License-Identifier: Apache-2.0
//
// Standard exact DMD on raw snapshot pairs — the comparison baseline. Unlike
// the weak pipeline it requires an equispaced grid and works on the discrete
// propagator, recovering continuous eigenvalues through a principal-branch log.

#pragma once

#include <Eigen/Dense>

#include "wdmd/core.hpp"

namespace wdmd {

struct ExactDmdModel {
  Eigen::VectorXcd discrete;    // eigenvalues of the one-step propagator
  Eigen::VectorXcd continuous;  // log(mu)/dt, principal branch, sorted
  Eigen::MatrixXcd modes;       // X2 V S^-1 W, unit-normalized columns
  double dt;
  int rank;
};

/// Fit exact DMD at the given truncation rank.
/// Throws NonUniformGrid unless sample spacing is uniform to 1e-9 relative
/// (this baseline deliberately keeps the classical restriction), and
/// RankTooLarge when rank exceeds min(M, N-1). Imaginary parts of the
/// continuous spectrum live in (-pi/dt, pi/dt]; frequencies beyond Nyquist
/// alias and are not detected.
ExactDmdModel fit_exact_dmd(const SnapshotSet& snapshots, int rank);

}  // namespace wdmd
