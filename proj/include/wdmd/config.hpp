// SPDX-License-Identifier: Apache-2.0
//
// Flat dotted-key run configuration ("trial.counts = 4,8"), strict about
// unknown keys. CLI flags are merged on top by the front end.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wdmd/basis.hpp"
#include "wdmd/core.hpp"
#include "wdmd/wdmd.hpp"

namespace wdmd {

/// Every tunable of a run. The window is optional: when unset the front end
/// uses the full sampled range of the input data.
struct RunConfig {
  std::optional<double> window_t1;
  std::optional<double> window_t2;
  LayoutSpec trial{{40}, {1.0}, 2};
  LayoutSpec test{{80}, {1.0}, 2};
  double energy = 1.0;
  double rcond = 1e-10;
  double forecast_dt = 1e-3;
  int forecast_steps = 1000;
  ForecastSpace forecast_space = ForecastSpace::reduced;
  double noise_sigma = 0.0;
  double noise_magnitude = 0.0;
  bool noise_additive = false;
  std::uint64_t seed = 0;
  std::string output_dir = ".";
};

/// Recognized keys: window.t1, window.t2, trial.counts, trial.overlaps,
/// trial.p, test.counts, test.overlaps, test.p, energy, rcond, forecast.dt,
/// forecast.steps, forecast.space, noise.sigma, noise.magnitude,
/// noise.additive, seed, output.dir. Lines are "key = value"; '#' starts a
/// comment; lists are comma-separated. Unknown keys raise ParseError.
void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value);

/// Parse a whole file into `config` (later lines win).
void load_config_file(RunConfig& config, const std::string& path);

/// Helpers shared with the CLI flag parser.
std::vector<int> parse_int_list(const std::string& text);
std::vector<double> parse_double_list(const std::string& text);

}  // namespace wdmd
