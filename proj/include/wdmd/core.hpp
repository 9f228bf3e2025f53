// SPDX-License-Identifier: Apache-2.0
//
// Shared domain types: time grids, snapshot sets, analysis windows, and
// complex spectra, together with the error taxonomy used across the library.

#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

namespace wdmd {

/// Machine-parsable failure categories. The CLI prints the enumerator name
/// verbatim so scripts can dispatch on it.
enum class ErrorCode {
  NonMonotoneTime,
  DuplicateTime,
  ShapeMismatch,
  NonFiniteData,
  EmptyWindow,
  EmptyLayout,
  WindowMismatch,
  OutOfWindow,
  ZeroMatrix,
  EigFailure,
  SingularStep,
  NonUniformGrid,
  RankTooLarge,
  NonDiagonalizable,
  SingularYMinus,
  GridMismatch,
  ZeroNorm,
  ParseError,
};

/// Enumerator name of an ErrorCode (e.g. "NonUniformGrid").
const char* error_name(ErrorCode code);

/// Exception carrying an ErrorCode; what() is "<Name>: <detail>".
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(error_name(code)) + ": " + detail),
        code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

/// Sample times. Strictly increasing, at least two entries; spacing may be
/// arbitrary — nothing in the pipeline assumes a uniform step.
struct TimeGrid {
  Eigen::VectorXd t;

  int size() const { return static_cast<int>(t.size()); }
  double front() const { return t(0); }
  double back() const { return t(t.size() - 1); }
};

/// M state variables sampled at the N grid times (column n = snapshot n).
struct SnapshotSet {
  TimeGrid grid;
  Eigen::MatrixXd x;  // M x N

  int states() const { return static_cast<int>(x.rows()); }
  int samples() const { return static_cast<int>(x.cols()); }
};

/// Validate raw data into a SnapshotSet.
/// Throws NonMonotoneTime, DuplicateTime, ShapeMismatch, NonFiniteData.
SnapshotSet validate_snapshots(const Eigen::MatrixXd& x,
                               const Eigen::VectorXd& t);

/// Closed analysis interval [t1, t2]; all inner products run over it.
struct Window {
  double t1;
  double t2;

  double length() const { return t2 - t1; }
};

/// Check t1 < t2 and [t1, t2] contained in the grid's sample range
/// (tolerance 1e-12 relative, so a window equal to the full range passes).
void check_window(const Window& window, const TimeGrid& grid);

/// Sort eigenvalues descending by real part, ties broken by descending
/// imaginary part; returns the permutation (new position k held old index
/// order[k]) so eigenvector columns can be reordered consistently.
std::vector<int> spectrum_order(const Eigen::VectorXcd& eigenvalues);

/// Apply spectrum_order in place.
void sort_spectrum(Eigen::VectorXcd& eigenvalues);

/// True when every non-real eigenvalue has a conjugate mate within
/// rtol * max(1, |lambda|); real data must produce conjugate-closed spectra.
bool conjugate_closed(const Eigen::VectorXcd& eigenvalues,
                      double rtol = 1e-10);

}  // namespace wdmd
