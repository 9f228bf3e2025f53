// SPDX-License-Identifier: Apache-2.0
//
// Command-line front end. Subcommands:
//   fit          fit a model, write spectrum + summary
//   eigs         spectrum only
//   reconstruct  denoised reconstruction on a dense grid
//   forecast     implicit-Euler forecast (optionally scored against truth)
//   sweep        spectrum vs test-basis size
//   oracle       closed-form oscillator eigenvalues vs window length
//   gen          synthetic problem data, optionally noisy

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wdmd/baseline.hpp"
#include "wdmd/bench.hpp"
#include "wdmd/config.hpp"
#include "wdmd/csv.hpp"
#include "wdmd/wdmd.hpp"

namespace {

using namespace wdmd;

// Raw flag values; only flags the user actually passed override the config.
struct CommonFlags {
  std::string config_path;
  std::string window;
  std::string trial_counts;
  std::string test_counts;
  std::string overlaps;
  std::optional<double> energy;
  std::optional<int> p;
  std::optional<std::uint64_t> seed;
  std::string layout = "time-rows";
  std::string output;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--config", flags.config_path, "Config file (key = value)");
  cmd->add_option("--window", flags.window, "Analysis window T1:T2");
  cmd->add_option("--energy", flags.energy, "SVD energy fraction in (0,1]");
  cmd->add_option("--p", flags.p, "Bump polynomial order");
  cmd->add_option("--trial-counts", flags.trial_counts,
                  "Trial tier sizes, e.g. 10,30,90");
  cmd->add_option("--test-counts", flags.test_counts, "Test tier sizes");
  cmd->add_option("--overlaps", flags.overlaps,
                  "Tier overlap fractions (single value broadcasts)");
  cmd->add_option("--seed", flags.seed, "RNG seed");
  cmd->add_option("--layout", flags.layout, "CSV layout")
      ->check(CLI::IsMember({"time-rows", "state-rows"}));
  cmd->add_option("--output", flags.output, "Output directory");
}

std::pair<double, double> parse_pair(const std::string& text,
                                     const std::string& what) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) {
    throw Error(ErrorCode::ParseError, what + " must be 'A:B', got '" + text + "'");
  }
  const auto lo = parse_double_list(text.substr(0, colon));
  const auto hi = parse_double_list(text.substr(colon + 1));
  if (lo.size() != 1 || hi.size() != 1) {
    throw Error(ErrorCode::ParseError, what + " must be 'A:B', got '" + text + "'");
  }
  return {lo[0], hi[0]};
}

// Broadcast a single overlap across all tiers; otherwise sizes must match
// (build_layout enforces that later).
std::vector<double> fit_overlaps(std::vector<double> overlaps, size_t tiers) {
  if (overlaps.size() == 1 && tiers > 1) {
    return std::vector<double>(tiers, overlaps[0]);
  }
  return overlaps;
}

RunConfig resolve_config(const CommonFlags& flags) {
  RunConfig config;
  if (!flags.config_path.empty()) load_config_file(config, flags.config_path);
  if (!flags.window.empty()) {
    const auto [t1, t2] = parse_pair(flags.window, "--window");
    config.window_t1 = t1;
    config.window_t2 = t2;
  }
  if (!flags.trial_counts.empty()) {
    config.trial.counts = parse_int_list(flags.trial_counts);
  }
  if (!flags.test_counts.empty()) {
    config.test.counts = parse_int_list(flags.test_counts);
  }
  if (!flags.overlaps.empty()) {
    const auto values = parse_double_list(flags.overlaps);
    config.trial.overlaps = values;
    config.test.overlaps = values;
  }
  if (flags.energy) config.energy = *flags.energy;
  if (flags.p) config.trial.p = config.test.p = *flags.p;
  if (flags.seed) config.seed = *flags.seed;
  if (!flags.output.empty()) config.output_dir = flags.output;
  config.trial.overlaps =
      fit_overlaps(config.trial.overlaps, config.trial.counts.size());
  config.test.overlaps =
      fit_overlaps(config.test.overlaps, config.test.counts.size());
  return config;
}

CsvLayout layout_of(const CommonFlags& flags) {
  return flags.layout == "state-rows" ? CsvLayout::state_rows
                                      : CsvLayout::time_rows;
}

Window window_of(const RunConfig& config, const SnapshotSet& snapshots) {
  Window window{config.window_t1.value_or(snapshots.grid.front()),
                config.window_t2.value_or(snapshots.grid.back())};
  check_window(window, snapshots.grid);
  return window;
}

std::filesystem::path ensure_output_dir(const RunConfig& config) {
  std::filesystem::path dir(config.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

void print_spectrum(const Eigen::VectorXcd& spectrum) {
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) {
    std::cout << k << ": " << format_value(spectrum(k).real()) << " "
              << (spectrum(k).imag() >= 0 ? "+" : "-") << " "
              << format_value(std::abs(spectrum(k).imag())) << "i\n";
  }
}

void write_model_summary(const std::filesystem::path& path,
                         const WdmdModel& model, const RunConfig& config) {
  std::ofstream out(path);
  out << "window = " << format_value(model.window.t1) << " : "
      << format_value(model.window.t2) << "\n";
  out << "trial.counts =";
  for (int c : config.trial.counts) out << ' ' << c;
  out << "\ntest.counts =";
  for (int c : config.test.counts) out << ' ' << c;
  out << "\np = " << config.trial.p << "\n";
  out << "energy = " << format_value(config.energy) << "\n";
  out << "rank = " << model.svd.rank << "\n";
  out << "singular_values =";
  for (Eigen::Index k = 0; k < model.svd.s.size(); ++k) {
    out << ' ' << format_value(model.svd.s(k));
  }
  out << "\nrank_deficient_gram = "
      << (model.trial.rank_deficient ? "true" : "false") << "\n";
  out << "spectrum:\n";
  for (Eigen::Index k = 0; k < model.spectrum.size(); ++k) {
    out << "  " << k << ": " << format_value(model.spectrum(k).real()) << ' '
        << format_value(model.spectrum(k).imag()) << "\n";
  }
}

LinearSystemSpec problem_spec(const std::string& name) {
  if (name == "toy") return toy_oscillator_spec();
  if (name == "exp") {
    Eigen::MatrixXd a(1, 1);
    a << -1.0;
    Eigen::VectorXd y0(1);
    y0 << 1.0;
    return LinearSystemSpec{a, y0, "exp-decay"};
  }
  if (name == "sub" || name == "super") {
    // Stiff two-mode surrogates with the sub/supercritical spectra.
    Eigen::Matrix2d v;
    v << 1.0, 1.0, 0.8, -0.6;
    Eigen::Vector2d lambda = name == "sub"
                                 ? Eigen::Vector2d(-0.002244, -0.27054)
                                 : Eigen::Vector2d(0.007565, -0.270383);
    Eigen::MatrixXd a = v * lambda.asDiagonal() * v.inverse();
    Eigen::VectorXd y0(2);
    y0 << 1.0, 0.3;
    return LinearSystemSpec{a, y0, name + "critical-surrogate"};
  }
  throw Error(ErrorCode::ParseError, "unknown problem '" + name + "'");
}

TimeGrid grid_from_spec(const std::string& text, double t0, double t1) {
  // "uniform:N" or "nonuniform:N[:RATIO]".
  auto fields = std::vector<std::string>{};
  std::string token;
  std::stringstream ss(text);
  while (std::getline(ss, token, ':')) fields.push_back(token);
  if (fields.size() < 2) {
    throw Error(ErrorCode::ParseError,
                "grid must be 'uniform:N' or 'nonuniform:N[:RATIO]'");
  }
  const int n = parse_int_list(fields[1]).at(0);
  if (fields[0] == "uniform") return uniform_grid(n, t0, t1);
  if (fields[0] == "nonuniform") {
    const double ratio =
        fields.size() > 2 ? parse_double_list(fields[2]).at(0) : 10.0;
    return geometric_grid(n, t0, t1, ratio);
  }
  throw Error(ErrorCode::ParseError, "unknown grid kind '" + fields[0] + "'");
}

int run(int argc, char** argv) {
  CLI::App app{"Weak-form dynamic mode decomposition"};
  app.require_subcommand(1);

  CommonFlags flags;
  std::string input_path;
  std::string truth_path;
  int recon_points = 1000;
  double forecast_dt = 0.0;
  int forecast_steps = 0;
  std::string forecast_space;
  double forecast_from = std::numeric_limits<double>::quiet_NaN();
  std::string test_sizes_text;
  std::string t2_text = "1,5,20,100";
  double t_final = 100.0;
  std::string problem = "toy";
  std::string grid_spec = "uniform:1001";
  std::string range_text = "0:100";
  double noise_sigma = 0.0;
  double noise_mag = 0.0;
  bool noise_additive = false;

  auto* fit_cmd = app.add_subcommand("fit", "Fit a model; write spectrum and summary");
  fit_cmd->add_option("input", input_path, "Snapshot CSV")->required();
  add_common_flags(fit_cmd, flags);

  auto* eigs_cmd = app.add_subcommand("eigs", "Fit and print the spectrum");
  eigs_cmd->add_option("input", input_path, "Snapshot CSV")->required();
  add_common_flags(eigs_cmd, flags);

  auto* recon_cmd =
      app.add_subcommand("reconstruct", "Denoised reconstruction on a dense grid");
  recon_cmd->add_option("input", input_path, "Snapshot CSV")->required();
  recon_cmd->add_option("--points", recon_points, "Grid points over the window");
  add_common_flags(recon_cmd, flags);

  auto* forecast_cmd = app.add_subcommand("forecast", "Implicit-Euler forecast");
  forecast_cmd->add_option("input", input_path, "Snapshot CSV")->required();
  forecast_cmd->add_option("--dt", forecast_dt, "Step size");
  forecast_cmd->add_option("--steps", forecast_steps, "Step count");
  forecast_cmd->add_option("--space", forecast_space, "reduced|full")
      ->check(CLI::IsMember({"reduced", "full"}));
  forecast_cmd->add_option("--from", forecast_from,
                           "Start time (default: window end)");
  forecast_cmd->add_option("--truth", truth_path,
                           "Truth CSV sampled at the forecast times");
  add_common_flags(forecast_cmd, flags);

  auto* sweep_cmd =
      app.add_subcommand("sweep", "Fit once per test-basis size");
  sweep_cmd->add_option("input", input_path, "Snapshot CSV")->required();
  sweep_cmd->add_option("--test-sizes", test_sizes_text, "e.g. 8,16,32,64")
      ->required();
  add_common_flags(sweep_cmd, flags);

  auto* oracle_cmd = app.add_subcommand(
      "oracle", "Closed-form oscillator eigenvalues vs window length");
  oracle_cmd->add_option("--t2", t2_text, "Window ends, e.g. 1,5,20,100");
  oracle_cmd->add_option("--t-final", t_final, "Full sampled range end");
  add_common_flags(oracle_cmd, flags);

  auto* gen_cmd = app.add_subcommand("gen", "Generate synthetic snapshot data");
  gen_cmd->add_option("--problem", problem, "toy|exp|sub|super");
  gen_cmd->add_option("--grid", grid_spec, "uniform:N or nonuniform:N[:RATIO]");
  gen_cmd->add_option("--range", range_text, "Sample range T0:T1");
  gen_cmd->add_option("--noise-sigma", noise_sigma, "Gaussian std of the draw");
  gen_cmd->add_option("--noise-mag", noise_mag,
                      "Relative magnitude of multiplicative noise");
  gen_cmd->add_flag("--additive", noise_additive,
                    "Add the draw directly instead of scaling the signal");
  add_common_flags(gen_cmd, flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;  // usage error
  }

  RunConfig config = resolve_config(flags);

  const auto fit_from_csv = [&](const SnapshotSet& snapshots) {
    const Window window = window_of(config, snapshots);
    return fit(snapshots, config.trial, config.test, window, config.energy,
               config.rcond);
  };

  if (*fit_cmd || *eigs_cmd) {
    const SnapshotSet snapshots = load_snapshots_csv(input_path, layout_of(flags));
    const WdmdModel model = fit_from_csv(snapshots);
    const auto dir = ensure_output_dir(config);
    write_spectrum_csv((dir / "spectrum.csv").string(), model.spectrum);
    if (*fit_cmd) write_model_summary(dir / "model.txt", model, config);
    print_spectrum(model.spectrum);
    return 0;
  }

  if (*recon_cmd) {
    const SnapshotSet snapshots = load_snapshots_csv(input_path, layout_of(flags));
    const WdmdModel model = fit_from_csv(snapshots);
    const TimeGrid dense =
        uniform_grid(recon_points, model.window.t1, model.window.t2);
    const Eigen::MatrixXd values = reconstruct(model.trial, dense.t);
    const auto dir = ensure_output_dir(config);
    save_snapshots_csv((dir / "reconstruction.csv").string(),
                       SnapshotSet{dense, values}, layout_of(flags));
    std::cout << "wrote " << (dir / "reconstruction.csv").string() << "\n";
    return 0;
  }

  if (*forecast_cmd) {
    const SnapshotSet snapshots = load_snapshots_csv(input_path, layout_of(flags));
    const WdmdModel model = fit_from_csv(snapshots);
    const double dt = forecast_dt > 0.0 ? forecast_dt : config.forecast_dt;
    const int steps = forecast_steps > 0 ? forecast_steps : config.forecast_steps;
    ForecastSpace space = config.forecast_space;
    if (!forecast_space.empty()) {
      space = forecast_space == "full" ? ForecastSpace::full
                                       : ForecastSpace::reduced;
    }
    const double start_time =
        std::isnan(forecast_from) ? model.window.t2 : forecast_from;
    const Eigen::VectorXd y_start = reconstruct(model.trial, start_time);
    const Eigen::MatrixXd predicted = forecast(model, y_start, dt, steps, space);
    TimeGrid forecast_grid;
    forecast_grid.t =
        start_time + dt * Eigen::VectorXd::LinSpaced(steps, 1, steps).array();
    const SnapshotSet predicted_set{forecast_grid, predicted};
    const auto dir = ensure_output_dir(config);
    save_snapshots_csv((dir / "forecast.csv").string(), predicted_set,
                       layout_of(flags));
    std::cout << "wrote " << (dir / "forecast.csv").string() << "\n";
    if (!truth_path.empty()) {
      const SnapshotSet truth = load_snapshots_csv(truth_path, layout_of(flags));
      const Eigen::VectorXd err = forecast_error(truth, predicted_set);
      write_error_csv((dir / "forecast_error.csv").string(), forecast_grid.t,
                      err);
      std::cout << "wrote " << (dir / "forecast_error.csv").string() << "\n";
    }
    return 0;
  }

  if (*sweep_cmd) {
    const SnapshotSet snapshots = load_snapshots_csv(input_path, layout_of(flags));
    const Window window = window_of(config, snapshots);
    const auto rows = convergence_sweep(
        snapshots, config.trial, parse_int_list(test_sizes_text), window,
        config.energy, config.test.overlaps.at(0), config.test.p);
    const auto dir = ensure_output_dir(config);
    write_sweep_csv((dir / "sweep.csv").string(), rows);
    for (const auto& row : rows) {
      std::cout << "test_size " << row.test_size << ":\n";
      print_spectrum(row.spectrum);
    }
    return 0;
  }

  if (*oracle_cmd) {
    const auto t2_values = parse_double_list(t2_text);
    std::vector<Eigen::VectorXcd> spectra;
    for (double t2 : t2_values) {
      spectra.push_back(table1_oracle(t2, t_final));
      std::cout << "t2 = " << t2 << ":\n";
      print_spectrum(spectra.back());
    }
    const auto dir = ensure_output_dir(config);
    write_oracle_csv((dir / "oracle.csv").string(), t2_values, spectra);
    return 0;
  }

  if (*gen_cmd) {
    const auto [t0, t1] = parse_pair(range_text, "--range");
    const LinearSystemSpec spec = problem_spec(problem);
    const TimeGrid grid = grid_from_spec(grid_spec, t0, t1);
    SnapshotSet snapshots = sample_trajectory(spec, grid);
    if (noise_sigma > 0.0) {
      snapshots = add_noise(
          snapshots, NoiseSpec{noise_sigma, noise_mag, config.seed,
                               noise_additive});
    }
    const auto dir = ensure_output_dir(config);
    const auto path = dir / "snapshots.csv";
    save_snapshots_csv(path.string(), snapshots, layout_of(flags));
    std::cout << "wrote " << path.string() << "\n";
    return 0;
  }

  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
}
