// SPDX-License-Identifier: Apache-2.0

#include "wdmd/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

namespace wdmd {
namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) out.push_back(trim(field));
  if (!line.empty() && line.back() == ',') out.push_back("");
  return out;
}

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.data();
  const char* end = begin + field.size();
  const auto result = std::from_chars(begin, end, out);
  return result.ec == std::errc() && result.ptr == end && !field.empty();
}

double parse_field_or_throw(const std::string& field, size_t row, size_t col) {
  double v = 0.0;
  if (!parse_double(field, v)) {
    throw Error(ErrorCode::ParseError,
                "bad numeric field '" + field + "' at row " +
                    std::to_string(row + 1) + ", column " +
                    std::to_string(col + 1));
  }
  return v;
}

// Raw numeric rows of the file, header skipped, otherwise untouched.
std::vector<std::vector<double>> read_rows(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::vector<std::vector<double>> rows;
  std::string line;
  size_t line_no = 0;
  bool first_data_line = true;
  while (std::getline(in, line)) {
    const size_t row = line_no++;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (first_data_line) {
      // Header detection: any non-numeric field in the first non-empty line.
      first_data_line = false;
      double probe;
      const bool numeric = std::all_of(
          fields.begin(), fields.end(),
          [&](const std::string& f) { return parse_double(f, probe); });
      if (!numeric) continue;
    }
    std::vector<double> values(fields.size());
    for (size_t c = 0; c < fields.size(); ++c) {
      values[c] = parse_field_or_throw(fields[c], row, c);
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw Error(ErrorCode::ParseError,
                  "row " + std::to_string(row + 1) + " has " +
                      std::to_string(values.size()) + " fields, expected " +
                      std::to_string(rows.front().size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    throw Error(ErrorCode::ParseError, "no data rows in '" + path + "'");
  }
  return rows;
}

}  // namespace

SnapshotSet load_snapshots_csv(const std::string& path, CsvLayout layout) {
  auto rows = read_rows(path);
  Eigen::VectorXd t;
  Eigen::MatrixXd x;
  if (layout == CsvLayout::time_rows) {
    const size_t n = rows.size();
    const size_t m = rows.front().size() - 1;
    if (m < 1) {
      throw Error(ErrorCode::ParseError, "need a time column plus >= 1 state");
    }
    // Sort rows by time; equal times are a data error, not an ordering one.
    std::sort(rows.begin(), rows.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    t.resize(static_cast<Eigen::Index>(n));
    x.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (size_t k = 0; k < n; ++k) {
      t(static_cast<Eigen::Index>(k)) = rows[k][0];
      for (size_t j = 0; j < m; ++j) {
        x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            rows[k][j + 1];
      }
    }
  } else {
    // First row = times, each later row = one state across all samples.
    if (rows.size() < 2) {
      throw Error(ErrorCode::ParseError, "state-rows layout needs >= 2 rows");
    }
    const size_t n = rows.front().size();
    const size_t m = rows.size() - 1;
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
      return rows.front()[a] < rows.front()[b];
    });
    t.resize(static_cast<Eigen::Index>(n));
    x.resize(static_cast<Eigen::Index>(m), static_cast<Eigen::Index>(n));
    for (size_t k = 0; k < n; ++k) {
      t(static_cast<Eigen::Index>(k)) = rows.front()[order[k]];
      for (size_t j = 0; j < m; ++j) {
        x(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) =
            rows[j + 1][order[k]];
      }
    }
  }
  return validate_snapshots(x, t);  // throws DuplicateTime on equal times
}

std::string format_value(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void save_snapshots_csv(const std::string& path, const SnapshotSet& snapshots,
                        CsvLayout layout) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  if (layout == CsvLayout::time_rows) {
    for (int k = 0; k < snapshots.samples(); ++k) {
      out << format_value(snapshots.grid.t(k));
      for (int m = 0; m < snapshots.states(); ++m) {
        out << ',' << format_value(snapshots.x(m, k));
      }
      out << '\n';
    }
  } else {
    for (int k = 0; k < snapshots.samples(); ++k) {
      out << (k ? "," : "") << format_value(snapshots.grid.t(k));
    }
    out << '\n';
    for (int m = 0; m < snapshots.states(); ++m) {
      for (int k = 0; k < snapshots.samples(); ++k) {
        out << (k ? "," : "") << format_value(snapshots.x(m, k));
      }
      out << '\n';
    }
  }
}

void write_spectrum_csv(const std::string& path,
                        const Eigen::VectorXcd& spectrum) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << "index,re,im\n";
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    out << k << ',' << format_value(spectrum(k).real()) << ','
        << format_value(spectrum(k).imag()) << '\n';
  }
}

void write_oracle_csv(const std::string& path,
                      const std::vector<double>& t2_values,
                      const std::vector<Eigen::VectorXcd>& spectra) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << "t2,index,re,im\n";
  for (size_t row = 0; row < t2_values.size(); ++row) {
    for (Eigen::Index k = 0; k < spectra[row].size(); ++k) {
      out << format_value(t2_values[row]) << ',' << k << ','
          << format_value(spectra[row](k).real()) << ','
          << format_value(spectra[row](k).imag()) << '\n';
    }
  }
}

void write_sweep_csv(const std::string& path,
                     const std::vector<SweepRow>& rows) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << "test_size,index,re,im\n";
  for (const auto& row : rows) {
    for (Eigen::Index k = 0; k < row.spectrum.size(); ++k) {
      out << row.test_size << ',' << k << ','
          << format_value(row.spectrum(k).real()) << ','
          << format_value(row.spectrum(k).imag()) << '\n';
    }
  }
}

void write_error_csv(const std::string& path, const Eigen::VectorXd& t,
                     const Eigen::VectorXd& err) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + path + "'");
  out << "t,err\n";
  for (Eigen::Index k = 0; k < t.size(); ++k) {
    out << format_value(t(k)) << ',' << format_value(err(k)) << '\n';
  }
}

}  // namespace wdmd
