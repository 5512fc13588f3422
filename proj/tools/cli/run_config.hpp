// Copyright 2026 The bellstab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "bellstab/bellstab.h"

namespace bellstab::cli {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double mhz_to_rad_per_us(double mhz) { return mhz * kTwoPi; }
inline double rad_per_us_to_mhz(double w) { return w / kTwoPi; }

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Mode { Simulate, Sweep, Truncation, Oracles, Validate };

std::optional<Mode> parse_mode(std::string_view name);
const char* mode_name(Mode mode);

/// Flat key-value settings, in user units (MHz, us, ns).
using Settings = std::map<std::string, std::string>;

struct KeyInfo {
  const char* key;
  const char* flag;  // long option name without the leading dashes
  const char* help;
};

/// Every accepted configuration key, in documentation order.
const std::vector<KeyInfo>& config_keys();

struct RunConfig {
  Mode mode = Mode::Simulate;
  bs_params params{};
  bs_evolution evolution{};
  bs_initial_state initial = BS_INITIAL_GG0;
  std::filesystem::path out_dir = "bellstab_out";
  bool emit_plots = false;
  std::vector<double> sweep_nbar;
  std::vector<double> sweep_omega_ratio;
  std::vector<int> truncation_ncav;
  unsigned threads = 0;
};

/// Reads `key: value` (or `key = value`) lines; `#` starts a comment.
/// Unknown and repeated keys are rejected.
Settings parse_settings(std::string_view text, const std::string& origin = "config");
Settings read_settings_file(const std::filesystem::path& path);

/// Applies defaults, then `file`, then `overrides`, converts units and
/// checks physical invariants. Throws ConfigError naming the offending key
/// or invariant.
RunConfig resolve_config(Mode mode, const Settings& file, const Settings& overrides);

/// Resolved configuration in user units, one key per line, suitable for
/// feeding back through parse_settings.
Settings echo_settings(const RunConfig& config);

}  // namespace bellstab::cli
