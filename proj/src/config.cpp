// SPDX-License-Identifier: Apache-2.0

#include "wdmd/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

namespace wdmd {
namespace {

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double to_double(const std::string& text, const std::string& key) {
  double v = 0.0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, v);
  if (result.ec != std::errc() || result.ptr != end || text.empty()) {
    throw Error(ErrorCode::ParseError,
                "bad number '" + text + "' for key '" + key + "'");
  }
  return v;
}

long to_long(const std::string& text, const std::string& key) {
  long v = 0;
  const char* end = text.data() + text.size();
  const auto result = std::from_chars(text.data(), end, v);
  if (result.ec != std::errc() || result.ptr != end || text.empty()) {
    throw Error(ErrorCode::ParseError,
                "bad integer '" + text + "' for key '" + key + "'");
  }
  return v;
}

bool to_bool(const std::string& text, const std::string& key) {
  if (text == "true" || text == "1" || text == "yes") return true;
  if (text == "false" || text == "0" || text == "no") return false;
  throw Error(ErrorCode::ParseError,
              "bad boolean '" + text + "' for key '" + key + "'");
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::stringstream ss(text);
  while (std::getline(ss, item, ',')) out.push_back(trim(item));
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  for (const auto& item : split_list(text)) {
    out.push_back(static_cast<int>(to_long(item, "list")));
  }
  return out;
}

std::vector<double> parse_double_list(const std::string& text) {
  std::vector<double> out;
  for (const auto& item : split_list(text)) {
    out.push_back(to_double(item, "list"));
  }
  return out;
}

void apply_config_line(RunConfig& config, const std::string& key,
                       const std::string& value) {
  if (key == "window.t1") {
    config.window_t1 = to_double(value, key);
  } else if (key == "window.t2") {
    config.window_t2 = to_double(value, key);
  } else if (key == "trial.counts") {
    config.trial.counts = parse_int_list(value);
  } else if (key == "trial.overlaps") {
    config.trial.overlaps = parse_double_list(value);
  } else if (key == "trial.p") {
    config.trial.p = static_cast<int>(to_long(value, key));
  } else if (key == "test.counts") {
    config.test.counts = parse_int_list(value);
  } else if (key == "test.overlaps") {
    config.test.overlaps = parse_double_list(value);
  } else if (key == "test.p") {
    config.test.p = static_cast<int>(to_long(value, key));
  } else if (key == "energy") {
    config.energy = to_double(value, key);
  } else if (key == "rcond") {
    config.rcond = to_double(value, key);
  } else if (key == "forecast.dt") {
    config.forecast_dt = to_double(value, key);
  } else if (key == "forecast.steps") {
    config.forecast_steps = static_cast<int>(to_long(value, key));
  } else if (key == "forecast.space") {
    if (value == "reduced") {
      config.forecast_space = ForecastSpace::reduced;
    } else if (value == "full") {
      config.forecast_space = ForecastSpace::full;
    } else {
      throw Error(ErrorCode::ParseError,
                  "forecast.space must be 'reduced' or 'full', got '" + value +
                      "'");
    }
  } else if (key == "noise.sigma") {
    config.noise_sigma = to_double(value, key);
  } else if (key == "noise.magnitude") {
    config.noise_magnitude = to_double(value, key);
  } else if (key == "noise.additive") {
    config.noise_additive = to_bool(value, key);
  } else if (key == "seed") {
    config.seed = static_cast<std::uint64_t>(to_long(value, key));
  } else if (key == "output.dir") {
    config.output_dir = value;
  } else {
    throw Error(ErrorCode::ParseError, "unknown config key '" + key + "'");
  }
}

void load_config_file(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open '" + path + "'");
  std::string line;
  size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::ParseError,
                  "expected 'key = value' at line " + std::to_string(line_no));
    }
    apply_config_line(config, trim(line.substr(0, eq)),
                      trim(line.substr(eq + 1)));
  }
}

}  // namespace wdmd
