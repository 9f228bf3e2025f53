// SPDX-License-Identifier: Apache-2.0

#include "wdmd/bench.hpp"

#include <Eigen/Eigenvalues>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <string>

#include "wdmd/wdmd.hpp"

namespace wdmd {
namespace {

constexpr double kOmegaSq = 169.0 * 29.0 / 400.0;  // 12.2525 exactly
constexpr double kAlpha = 0.1;

double toy_y0(double t) {
  return std::exp(-t / 20.0) * (std::sin(3.5 * t) / 70.0 + std::cos(3.5 * t));
}

double toy_y1(double t) {
  return -(2.0 * kOmegaSq / 7.0) * std::exp(-t / 20.0) * std::sin(3.5 * t);
}

// Time derivatives via the generator: y0' = y1, y1' = -w^2 y0 - alpha y1.
double toy_dy0(double t) { return toy_y1(t); }
double toy_dy1(double t) { return -kOmegaSq * toy_y0(t) - kAlpha * toy_y1(t); }

double adaptive_integral(const std::function<double(double)>& f, double lo,
                         double hi) {
  return boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      f, lo, hi, 12, 1e-12);
}

}  // namespace

LinearSystemSpec toy_oscillator_spec() {
  Eigen::MatrixXd a(2, 2);
  a << 0.0, 1.0, -kOmegaSq, -kAlpha;
  Eigen::VectorXd y0(2);
  y0 << 1.0, 0.0;
  return LinearSystemSpec{a, y0, "toy-oscillator"};
}

Eigen::MatrixXd toy_solution(const Eigen::VectorXd& t) {
  Eigen::MatrixXd y(2, t.size());
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    y(0, k) = toy_y0(t(k));
    y(1, k) = toy_y1(t(k));
  }
  return y;
}

TimeGrid uniform_grid(int n, double t0, double t1) {
  TimeGrid grid;
  grid.t = Eigen::VectorXd::LinSpaced(n, t0, t1);
  return grid;
}

TimeGrid geometric_grid(int n, double t0, double t1, double ratio) {
  if (ratio == 1.0) return uniform_grid(n, t0, t1);
  TimeGrid grid;
  grid.t.resize(n);
  // The continuous profile e^{a s} alone realizes a discrete last/first
  // spacing ratio of only ratio^((n-2)/(n-1)); stretch the exponent so the
  // sampled grid hits the requested ratio exactly.
  const double a = n > 2 ? std::log(ratio) * (n - 1) / (n - 2)
                         : std::log(ratio);
  const double denom = std::exp(a) - 1.0;
  for (int k = 0; k < n; ++k) {
    const double s = static_cast<double>(k) / (n - 1);
    grid.t(k) = t0 + (t1 - t0) * (std::exp(a * s) - 1.0) / denom;
  }
  return grid;
}

double spacing_ratio(const TimeGrid& grid) {
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  for (int k = 0; k + 1 < grid.size(); ++k) {
    const double d = grid.t(k + 1) - grid.t(k);
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  return hi / lo;
}

SnapshotSet sample_trajectory(const LinearSystemSpec& spec,
                              const TimeGrid& grid) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(spec.a);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigFailure, "eigenvalue iteration did not converge");
  }
  const Eigen::MatrixXcd v = solver.eigenvectors();
  Eigen::JacobiSVD<Eigen::MatrixXcd> cond_check(v);
  const auto& sv = cond_check.singularValues();
  if (sv(sv.size() - 1) <= 0.0 || sv(0) / sv(sv.size() - 1) >= 1e12) {
    throw Error(ErrorCode::NonDiagonalizable,
                "eigenvector matrix condition number >= 1e12");
  }
  const Eigen::VectorXcd coeff =
      v.partialPivLu().solve(spec.y0.cast<std::complex<double>>());
  const Eigen::VectorXcd lambda = solver.eigenvalues();

  Eigen::MatrixXcd y(spec.a.rows(), grid.size());
  for (int k = 0; k < grid.size(); ++k) {
    const Eigen::VectorXcd mode_amp =
        (lambda.array() * grid.t(k)).exp() * coeff.array();
    y.col(k) = v * mode_amp;
  }
  const double scale = std::max(1.0, y.real().cwiseAbs().maxCoeff());
  if (y.imag().cwiseAbs().maxCoeff() > 1e-10 * scale) {
    throw Error(ErrorCode::NonDiagonalizable,
                "imaginary residue above 1e-10 of the signal scale");
  }
  return validate_snapshots(y.real(), grid.t);
}

SnapshotSet add_noise(const SnapshotSet& snapshots, const NoiseSpec& noise) {
  std::mt19937_64 rng(noise.seed);
  std::normal_distribution<double> gauss(0.0, noise.sigma);
  SnapshotSet out = snapshots;
  if (noise.sigma == 0.0) return out;
  // Row-major draw order (state fastest within a row) keeps the stream
  // layout-independent and reproducible for a fixed seed.
  for (int m = 0; m < out.states(); ++m) {
    for (int n = 0; n < out.samples(); ++n) {
      const double g = gauss(rng);
      if (noise.additive) {
        out.x(m, n) += g;
      } else {
        out.x(m, n) *= 1.0 + noise.relative_magnitude * g;
      }
    }
  }
  return out;
}

double eigenvalue_error(std::complex<double> lambda_true,
                        std::complex<double> lambda_est) {
  return std::abs(lambda_true - lambda_est);
}

Eigen::VectorXd forecast_error(const SnapshotSet& truth,
                               const SnapshotSet& predicted) {
  if (truth.samples() != predicted.samples() ||
      truth.states() != predicted.states()) {
    throw Error(ErrorCode::GridMismatch, "snapshot shapes differ");
  }
  const double scale =
      std::max(1.0, truth.grid.t.cwiseAbs().maxCoeff());
  if ((truth.grid.t - predicted.grid.t).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw Error(ErrorCode::GridMismatch, "sample times differ");
  }
  Eigen::VectorXd err(truth.samples());
  for (int k = 0; k < truth.samples(); ++k) {
    const double denom = truth.x.col(k).norm();
    if (denom == 0.0) {
      throw Error(ErrorCode::ZeroNorm,
                  "truth vanishes at t=" + std::to_string(truth.grid.t(k)));
    }
    err(k) = (truth.x.col(k) - predicted.x.col(k)).norm() / denom;
  }
  return err;
}

double mean_forecast_error(const Eigen::VectorXd& per_time, int first,
                           int last) {
  if (first < 0 || last >= per_time.size() || first > last) {
    throw std::invalid_argument("bad averaging range");
  }
  return per_time.segment(first, last - first + 1).mean();
}

Eigen::VectorXcd table1_oracle(double t2, double t_final) {
  if (!(t2 > 0.0)) throw std::invalid_argument("t2 must be positive");
  using Func = double (*)(double);
  static constexpr Func val[2] = {&toy_y0, &toy_y1};
  static constexpr Func der[2] = {&toy_dy0, &toy_dy1};

  // Y- pairs the solutions over the window [0, t2]; Y+ uses the full sampled
  // range: boundary products at 0 and t_final minus the derivative pairings.
  Eigen::MatrixXd y_minus(2, 2), y_plus(2, 2);
  for (int m = 0; m < 2; ++m) {
    for (int i = 0; i < 2; ++i) {
      y_minus(m, i) = adaptive_integral(
          [&](double t) { return val[i](t) * val[m](t); }, 0.0, t2);
      const double boundary =
          val[i](t_final) * val[m](t_final) - val[i](0.0) * val[m](0.0);
      y_plus(m, i) =
          boundary - adaptive_integral(
                         [&](double t) { return der[i](t) * val[m](t); }, 0.0,
                         t_final);
    }
  }
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(y_minus);
  if (lu.rcond() < 1e-13) {
    throw Error(ErrorCode::SingularYMinus,
                "Y- is singular at t2=" + std::to_string(t2));
  }
  // A = Y+ Y-^-1, via the transposed solve.
  const Eigen::MatrixXd a =
      y_minus.transpose().partialPivLu().solve(y_plus.transpose()).transpose();
  Eigen::VectorXcd spectrum = Eigen::EigenSolver<Eigen::MatrixXd>(a).eigenvalues();
  sort_spectrum(spectrum);
  return spectrum;
}

std::vector<SweepRow> convergence_sweep(const SnapshotSet& snapshots,
                                        const LayoutSpec& trial_layout,
                                        const std::vector<int>& test_sizes,
                                        const Window& window, double energy,
                                        double test_overlap, int test_p) {
  if (!std::is_sorted(test_sizes.begin(), test_sizes.end())) {
    throw std::invalid_argument("test sizes must be increasing");
  }
  std::vector<SweepRow> rows;
  rows.reserve(test_sizes.size());
  for (int size : test_sizes) {
    const LayoutSpec test_layout{{size}, {test_overlap}, test_p};
    WdmdModel model =
        fit(snapshots, trial_layout, test_layout, window, energy);
    rows.push_back(SweepRow{size, std::move(model.spectrum)});
  }
  return rows;
}

}  // namespace wdmd
