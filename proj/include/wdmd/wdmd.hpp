// SPDX-License-Identifier: Apache-2.0
//
// The weak-form decomposition itself: assembly of the weak snapshot pair
// (Y+, Y-), energy-truncated SVD reduction, the reduced operator and its
// spectrum, spatial modes, implicit-Euler forecasting, and the end-to-end fit.

#pragma once

#include <Eigen/Dense>
#include <complex>

#include "wdmd/basis.hpp"
#include "wdmd/core.hpp"
#include "wdmd/projection.hpp"

namespace wdmd {

/// Weak snapshot matrices, one column per test function (M x I).
/// Column i of y_minus holds <phi_i, f> for the reconstruction f; column i of
/// y_plus holds the integrated-by-parts derivative pairing
/// [phi_i f] at the window ends minus <phi_i', f>.
struct WeakPair {
  Eigen::MatrixXd y_plus;
  Eigen::MatrixXd y_minus;
};

/// Assemble Y+ and Y- from a trial projection and a test basis built on the
/// same window. All pairings use exact Gauss-Legendre on support
/// intersections truncated to the window. Throws WindowMismatch when the test
/// window differs from the projection's.
WeakPair assemble_weak_pair(const TrialProjection& trial,
                            const BasisSet& test_basis,
                            const Window& test_window,
                            Exec exec = Exec::parallel);

/// Thin SVD of Y- cut by the energy rule: keep the smallest leading set of
/// singular values whose sum reaches `energy` of the total sum (not the sum
/// of squares).
struct SvdTruncation {
  Eigen::MatrixXd l;   // M x r, orthonormal columns
  Eigen::VectorXd s;   // r, positive descending
  Eigen::MatrixXd r_;  // I x r, orthonormal columns
  double energy;
  int rank;
};

/// Throws ZeroMatrix when Y- has no nonzero singular value. rank >= 1 always.
SvdTruncation truncate_svd(const Eigen::MatrixXd& y_minus, double energy);

/// A_tilde = L^T Y+ R S^-1, the r x r reduction of the unknown generator.
Eigen::MatrixXd reduced_operator(const Eigen::MatrixXd& y_plus,
                                 const SvdTruncation& svd);

/// Continuous-time eigenvalues (no discrete-to-continuous log: the weak form
/// produces the generator spectrum directly) and eigenvectors, sorted
/// descending by real part then imaginary part. Throws EigFailure if the
/// iteration does not converge.
struct Eigs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;  // column k pairs with values(k)
};

Eigs eigendecompose(const Eigen::MatrixXd& a_tilde);

/// Full-dimensional modes Phi = Y+ R S^-1 W, one column per eigenvalue, each
/// normalized to unit 2-norm with the largest-magnitude entry rotated to the
/// positive real axis.
Eigen::MatrixXcd spatial_modes(const Eigen::MatrixXd& y_plus,
                               const SvdTruncation& svd,
                               const Eigen::MatrixXcd& eigvecs);

/// Everything the decomposition learned.
struct WdmdModel {
  Eigen::MatrixXd a_tilde;
  Eigen::VectorXcd spectrum;
  Eigen::MatrixXcd eigvecs;
  Eigen::MatrixXcd modes;
  SvdTruncation svd;
  TrialProjection trial;
  Window window;
};

/// L A_tilde L^T: the reduced operator lifted back to the full state space.
Eigen::MatrixXd full_space_operator(const WdmdModel& model);

enum class ForecastSpace { reduced, full };

/// Repeated implicit-Euler steps with the learned operator: solve
/// (I - dt A) y_{n+1} = y_n. In reduced space the state is z = L^T y and the
/// output is L z (the component of y_start orthogonal to the retained
/// subspace is dropped). Column n holds the state after n+1 steps.
/// Throws SingularStep when I - dt A is numerically singular.
Eigen::MatrixXd forecast(const WdmdModel& model, const Eigen::VectorXd& y_start,
                         double dt, int steps,
                         ForecastSpace space = ForecastSpace::reduced);

/// End-to-end pipeline: build bases, project, assemble, truncate, reduce,
/// eigendecompose, modes. Deterministic for fixed inputs.
WdmdModel fit(const SnapshotSet& snapshots, const LayoutSpec& trial_layout,
              const LayoutSpec& test_layout, const Window& window,
              double energy, double rcond = 1e-10,
              Exec exec = Exec::parallel);

}  // namespace wdmd
