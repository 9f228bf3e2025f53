// SPDX-License-Identifier: Apache-2.0
//
// Projection of sampled data onto the trial bump basis: data inner products,
// Gram matrix, the least-squares coefficient solve, and reconstruction.
// The integral kernels have a serial reference path and an OpenMP path that
// must agree bitwise (each output entry is computed independently).

#pragma once

#include <Eigen/Dense>

#include "wdmd/basis.hpp"
#include "wdmd/core.hpp"

namespace wdmd {

/// Kernel execution policy. `parallel` distributes independent output
/// entries across OpenMP threads; `serial` is the reference loop the tests
/// compare against. Results are identical bit for bit.
enum class Exec { serial, parallel };

/// a(j, m) ~= integral over [t1,t2] of psi_j(t) x_m(t) dt, by composite
/// trapezoid on the sample grid restricted to window ∩ support(psi_j), with
/// the intersection endpoints inserted as extra nodes by linear interpolation
/// of the data. Throws EmptyWindow when no sample lies inside the window.
Eigen::MatrixXd data_inner_products(const SnapshotSet& snapshots,
                                    const BasisSet& basis,
                                    const Window& window,
                                    Exec exec = Exec::parallel);

/// G(i, j) = integral over [t1,t2] of psi_i psi_j dt, Gauss-Legendre on each
/// support intersection with enough nodes (2p+2 > (4p+1)/2) to be exact.
Eigen::MatrixXd gram_matrix(const BasisSet& basis, const Window& window,
                            Exec exec = Exec::parallel);

/// Result of the per-column least-squares solve of G c = a.
struct CoefficientSolve {
  Eigen::MatrixXd c;         // J x M
  bool rank_deficient;       // effective rank < J at the rcond cutoff
};

/// Minimum-norm least-squares solve via SVD pseudo-inverse; singular values
/// below rcond * s_max are dropped (the Gram matrix grows ill-conditioned as
/// overlaps increase, so a direct solve is not safe).
CoefficientSolve solve_trial_coefficients(const Eigen::MatrixXd& gram,
                                          const Eigen::MatrixXd& a,
                                          double rcond = 1e-10);

/// Denoised continuous representation of the data: x_m(t) ~ sum_j c(j,m) psi_j(t).
struct TrialProjection {
  BasisSet basis;
  Eigen::MatrixXd coeffs;  // J x M
  Window window;
  bool rank_deficient = false;
};

/// data_inner_products + gram_matrix + solve, bundled.
TrialProjection project(const SnapshotSet& snapshots, const BasisSet& basis,
                        const Window& window, double rcond = 1e-10,
                        Exec exec = Exec::parallel);

/// Evaluate the expansion at one time inside the window (closed interval).
/// Throws OutOfWindow otherwise — the expansion is never extrapolated.
Eigen::VectorXd reconstruct(const TrialProjection& projection, double t);

/// Evaluate at many times (each must lie in the window); column k = time k.
Eigen::MatrixXd reconstruct(const TrialProjection& projection,
                            const Eigen::VectorXd& times);

/// Root-mean-square residual of the reconstruction against the given data,
/// per state variable, over the samples inside the window.
Eigen::VectorXd residual_rms(const TrialProjection& projection,
                             const SnapshotSet& snapshots);

}  // namespace wdmd
