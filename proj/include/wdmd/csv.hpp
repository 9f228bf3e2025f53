// SPDX-License-Identifier: Apache-2.0
//
// CSV ingestion and output. Snapshot files default to one row per time
// (column 0 = time, columns 1..M = states); the transposed layout (one row
// per state, first row = times) serves wide-state problems. All numeric
// output uses 17 significant digits so a round trip reproduces every bit.

#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "wdmd/bench.hpp"
#include "wdmd/core.hpp"

namespace wdmd {

enum class CsvLayout { time_rows, state_rows };

/// Load snapshots from a CSV file. An optional header row is detected by a
/// non-numeric field. Rows may arrive in any time order (they are sorted);
/// duplicate times raise DuplicateTime, malformed fields ParseError with the
/// row/column location.
SnapshotSet load_snapshots_csv(const std::string& path,
                               CsvLayout layout = CsvLayout::time_rows);

/// Write snapshots in the given layout (no header, 17 significant digits).
void save_snapshots_csv(const std::string& path, const SnapshotSet& snapshots,
                        CsvLayout layout = CsvLayout::time_rows);

/// Write "index,re,im" rows in spectrum order — the stable plotting contract.
void write_spectrum_csv(const std::string& path,
                        const Eigen::VectorXcd& spectrum);

/// Write "t2,index,re,im" rows for the window-growth oracle study.
void write_oracle_csv(const std::string& path,
                      const std::vector<double>& t2_values,
                      const std::vector<Eigen::VectorXcd>& spectra);

/// Write "test_size,index,re,im" rows for a convergence sweep.
void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows);

/// Write "t,err" rows for a forecast error trace.
void write_error_csv(const std::string& path, const Eigen::VectorXd& t,
                     const Eigen::VectorXd& err);

/// Format one double with 17 significant digits (shortest round-trip form
/// is not required; %.17g always round-trips).
std::string format_value(double v);

}  // namespace wdmd
