// SPDX-License-Identifier: Apache-2.0

#include "wdmd/wdmd.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "wdmd/quadrature.hpp"

namespace wdmd {
namespace {

// See projection.cpp: policy-dispatched loop over independent outputs.
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

}  // namespace

WeakPair assemble_weak_pair(const TrialProjection& trial,
                            const BasisSet& test_basis,
                            const Window& test_window, Exec exec) {
  const Window& w = trial.window;
  if (test_window.t1 != w.t1 || test_window.t2 != w.t2) {
    throw Error(ErrorCode::WindowMismatch,
                "test basis window differs from the trial projection's");
  }
  const int n_states = static_cast<int>(trial.coeffs.cols());
  const int n_test = static_cast<int>(test_basis.size());
  const int n_trial = static_cast<int>(trial.basis.size());

  // Shared Gauss-Legendre rules, built before the parallel region.
  std::map<int, GaussLegendre> rules;
  for (const auto& phi : test_basis) {
    for (const auto& psi : trial.basis) {
      const int n = 2 * std::max(phi.p, psi.p) + 2;
      rules.try_emplace(n, n);
    }
  }

  // Reconstruction at the window ends for the boundary term.
  const Eigen::VectorXd f1 = reconstruct(trial, w.t1);
  const Eigen::VectorXd f2 = reconstruct(trial, w.t2);

  WeakPair pair;
  pair.y_minus = Eigen::MatrixXd::Zero(n_states, n_test);
  pair.y_plus = Eigen::MatrixXd::Zero(n_states, n_test);

  for_each_index(n_test, exec, [&](int i) {
    const Bump& phi = test_basis[i];
    Eigen::VectorXd acc_minus = Eigen::VectorXd::Zero(n_states);
    Eigen::VectorXd acc_deriv = Eigen::VectorXd::Zero(n_states);
    for (int j = 0; j < n_trial; ++j) {
      const Bump& psi = trial.basis[j];
      const double lo = std::max({w.t1, phi.a, psi.a});
      const double hi = std::min({w.t2, phi.b, psi.b});
      if (lo >= hi) continue;
      const auto& rule = rules.at(2 * std::max(phi.p, psi.p) + 2);
      const double ip_val = integrate(
          [&](double s) { return phi.eval(s) * psi.eval(s); }, lo, hi, rule);
      const double ip_der = integrate(
          [&](double s) { return phi.deriv(s) * psi.eval(s); }, lo, hi, rule);
      acc_minus += ip_val * trial.coeffs.row(j).transpose();
      acc_deriv += ip_der * trial.coeffs.row(j).transpose();
    }
    pair.y_minus.col(i) = acc_minus;
    // Integration by parts: boundary product minus the derivative pairing.
    pair.y_plus.col(i) = phi.eval(w.t2) * f2 - phi.eval(w.t1) * f1 - acc_deriv;
  });
  return pair;
}

SvdTruncation truncate_svd(const Eigen::MatrixXd& y_minus, double energy) {
  if (!(energy > 0.0 && energy <= 1.0)) {
    throw std::invalid_argument("energy must lie in (0, 1]");
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(y_minus,
                                     Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& s = svd.singularValues();
  const double floor_tol = s.size() > 0 ? s(0) * 1e-14 : 0.0;
  int nonzero = 0;
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > floor_tol) ++nonzero;
  }
  if (nonzero == 0 || s(0) == 0.0) {
    throw Error(ErrorCode::ZeroMatrix, "Y- has no nonzero singular value");
  }
  // Energy rule on the sum of singular values (a small slack absorbs roundoff
  // so energy = 1.0 keeps exactly the nonzero set).
  const double total = s.sum();
  double cum = 0.0;
  int rank = nonzero;
  for (int k = 0; k < nonzero; ++k) {
    cum += s(k);
    if (cum / total >= energy - 1e-15) {
      rank = k + 1;
      break;
    }
  }
  SvdTruncation out;
  out.l = svd.matrixU().leftCols(rank);
  out.s = s.head(rank);
  out.r_ = svd.matrixV().leftCols(rank);
  out.energy = energy;
  out.rank = rank;
  return out;
}

Eigen::MatrixXd reduced_operator(const Eigen::MatrixXd& y_plus,
                                 const SvdTruncation& svd) {
  return svd.l.transpose() * y_plus * svd.r_ *
         svd.s.cwiseInverse().asDiagonal();
}

Eigs eigendecompose(const Eigen::MatrixXd& a_tilde) {
  Eigen::EigenSolver<Eigen::MatrixXd> solver(a_tilde);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::EigFailure,
                "eigenvalue iteration did not converge");
  }
  Eigen::VectorXcd values = solver.eigenvalues();
  Eigen::MatrixXcd vectors = solver.eigenvectors();
  const auto order = spectrum_order(values);
  Eigs out;
  out.values.resize(values.size());
  out.vectors.resize(vectors.rows(), vectors.cols());
  for (size_t k = 0; k < order.size(); ++k) {
    out.values(static_cast<Eigen::Index>(k)) = values(order[k]);
    out.vectors.col(static_cast<Eigen::Index>(k)) = vectors.col(order[k]);
  }
  return out;
}

Eigen::MatrixXcd spatial_modes(const Eigen::MatrixXd& y_plus,
                               const SvdTruncation& svd,
                               const Eigen::MatrixXcd& eigvecs) {
  Eigen::MatrixXcd phi = (y_plus * svd.r_ * svd.s.cwiseInverse().asDiagonal())
                             .cast<std::complex<double>>() *
                         eigvecs;
  for (Eigen::Index k = 0; k < phi.cols(); ++k) {
    const double norm = phi.col(k).norm();
    if (norm == 0.0) continue;
    // Rotate the largest-magnitude entry onto the positive real axis, then
    // normalize; real eigenvalues of real data end up with real modes.
    Eigen::Index imax = 0;
    phi.col(k).cwiseAbs().maxCoeff(&imax);
    const std::complex<double> pivot = phi(imax, k);
    phi.col(k) *= std::abs(pivot) / (pivot * norm);
  }
  return phi;
}

Eigen::MatrixXd full_space_operator(const WdmdModel& model) {
  return model.svd.l * model.a_tilde * model.svd.l.transpose();
}

Eigen::MatrixXd forecast(const WdmdModel& model, const Eigen::VectorXd& y_start,
                         double dt, int steps, ForecastSpace space) {
  if (!(dt > 0.0)) throw std::invalid_argument("dt must be positive");
  if (steps < 1) throw std::invalid_argument("steps must be >= 1");
  const int n_states = static_cast<int>(model.svd.l.rows());
  if (y_start.size() != n_states) {
    throw Error(ErrorCode::ShapeMismatch,
                "start state has " + std::to_string(y_start.size()) +
                    " entries, model has " + std::to_string(n_states));
  }
  Eigen::MatrixXd out(n_states, steps);
  const auto factor_step = [&](const Eigen::MatrixXd& op) {
    const Eigen::Index n = op.rows();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(Eigen::MatrixXd::Identity(n, n) -
                                            dt * op);
    if (lu.rcond() < 1e-14) {
      throw Error(ErrorCode::SingularStep,
                  "I - dt*A is singular (dt resonates with an eigenvalue)");
    }
    return lu;
  };
  if (space == ForecastSpace::reduced) {
    const auto lu = factor_step(model.a_tilde);
    Eigen::VectorXd z = model.svd.l.transpose() * y_start;
    for (int n = 0; n < steps; ++n) {
      z = lu.solve(z);
      out.col(n) = model.svd.l * z;
    }
  } else {
    const auto lu = factor_step(full_space_operator(model));
    Eigen::VectorXd y = y_start;
    for (int n = 0; n < steps; ++n) {
      y = lu.solve(y);
      out.col(n) = y;
    }
  }
  return out;
}

WdmdModel fit(const SnapshotSet& snapshots, const LayoutSpec& trial_layout,
              const LayoutSpec& test_layout, const Window& window,
              double energy, double rcond, Exec exec) {
  check_window(window, snapshots.grid);
  const BasisSet trial_basis = build_layout(trial_layout, window);
  const BasisSet test_basis = build_layout(test_layout, window);
  TrialProjection projection =
      project(snapshots, trial_basis, window, rcond, exec);
  const WeakPair pair = assemble_weak_pair(projection, test_basis, window, exec);
  SvdTruncation svd = truncate_svd(pair.y_minus, energy);
  Eigen::MatrixXd a_tilde = reduced_operator(pair.y_plus, svd);
  Eigs eigs = eigendecompose(a_tilde);
  Eigen::MatrixXcd modes = spatial_modes(pair.y_plus, svd, eigs.vectors);
  return WdmdModel{std::move(a_tilde), std::move(eigs.values),
                   std::move(eigs.vectors), std::move(modes),
                   std::move(svd),     std::move(projection),
                   window};
}

}  // namespace wdmd
