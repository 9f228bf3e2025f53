// SPDX-License-Identifier: Apache-2.0
//
// Synthetic benchmark problems with analytically known spectra, noise
// injection, error metrics, and the closed-form oscillator oracle behind the
// eigenvalue-vs-window study.

#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "wdmd/basis.hpp"
#include "wdmd/core.hpp"

namespace wdmd {

/// A linear ODE y' = A y, y(0) = y0, used as a data generator.
struct LinearSystemSpec {
  Eigen::MatrixXd a;
  Eigen::VectorXd y0;
  std::string label;
};

/// Damped oscillator written as a first-order system:
/// A = [[0, 1], [-w^2, -alpha]] with w = 13 sqrt(29)/20 (w^2 = 12.2525
/// exactly) and alpha = 1/10, y0 = [1, 0]; spectrum -1/20 +- 7/2 i.
LinearSystemSpec toy_oscillator_spec();

/// Closed-form solution of the toy oscillator (2 x N):
///   y0(t) = e^{-t/20} (sin(3.5 t)/70 + cos(3.5 t))
///   y1(t) = -(2 w^2 / 7) e^{-t/20} sin(3.5 t)
Eigen::MatrixXd toy_solution(const Eigen::VectorXd& t);

/// Uniform grid of n points on [t0, t1].
TimeGrid uniform_grid(int n, double t0, double t1);

/// n points on [t0, t1] with geometrically growing spacing; the final
/// spacing is exactly `ratio` times the first — the standard nonuniform grid
/// in the test suite.
TimeGrid geometric_grid(int n, double t0, double t1, double ratio);

/// Largest adjacent spacing divided by smallest (1 for uniform grids).
double spacing_ratio(const TimeGrid& grid);

/// Sample y(t) = V e^{Lambda t} V^-1 y0 on the grid via eigendecomposition.
/// Throws NonDiagonalizable when the eigenvector matrix is ill-conditioned
/// (condition number >= 1e12) or the recovered imaginary residue exceeds
/// 1e-10 relative.
SnapshotSet sample_trajectory(const LinearSystemSpec& spec,
                              const TimeGrid& grid);

/// Measurement noise. Default is multiplicative-relative:
///   x <- x * (1 + relative_magnitude * g), g ~ Normal(0, sigma^2);
/// with `additive` set, x <- x + g instead (relative_magnitude unused).
/// Deterministic for a fixed seed.
struct NoiseSpec {
  double sigma = 0.0;
  double relative_magnitude = 0.0;
  std::uint64_t seed = 0;
  bool additive = false;
};

SnapshotSet add_noise(const SnapshotSet& snapshots, const NoiseSpec& noise);

/// Complex-modulus distance between a true and an estimated eigenvalue.
double eigenvalue_error(std::complex<double> lambda_true,
                        std::complex<double> lambda_est);

/// Per-time relative 2-norm error ||u - u_pred|| / ||u|| between two snapshot
/// sets on the same grid. Throws GridMismatch / ZeroNorm.
Eigen::VectorXd forecast_error(const SnapshotSet& truth,
                               const SnapshotSet& predicted);

/// Mean of forecast_error entries over the index range [first, last].
double mean_forecast_error(const Eigen::VectorXd& per_time, int first,
                           int last);

/// Spectrum of the 2x2 weak system built from the analytic oscillator
/// solutions used as both trial and test functions: Y- pairs the solutions
/// over [0, t2] while Y+ (boundary term and derivative pairings) runs over
/// the full sampled range [0, t_final]; the spectrum of Y+ Y-^-1 then drifts
/// toward the true eigenvalues as the window grows. Adaptive Gauss-Kronrod
/// quadrature, tolerance 1e-12. Throws SingularYMinus.
Eigen::VectorXcd table1_oracle(double t2, double t_final = 100.0);

/// One fit per test-basis size, everything else fixed.
struct SweepRow {
  int test_size;
  Eigen::VectorXcd spectrum;
};

std::vector<SweepRow> convergence_sweep(const SnapshotSet& snapshots,
                                        const LayoutSpec& trial_layout,
                                        const std::vector<int>& test_sizes,
                                        const Window& window, double energy,
                                        double test_overlap = 1.0,
                                        int test_p = 2);

}  // namespace wdmd
