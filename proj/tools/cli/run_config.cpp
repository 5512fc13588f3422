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

#include "run_config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bellstab::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool known_key(std::string_view key) {
  const auto& keys = config_keys();
  return std::any_of(keys.begin(), keys.end(), [&](const KeyInfo& k) { return key == k.key; });
}

double parse_double(const std::string& key, std::string_view text) {
  text = trim(text);
  double value = 0.0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end || std::isnan(value)) {
    throw ConfigError(key + ": expected a number, got '" + std::string(text) + "'");
  }
  return value;
}

long parse_integer(const std::string& key, std::string_view text) {
  text = trim(text);
  long value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    throw ConfigError(key + ": expected an integer, got '" + std::string(text) + "'");
  }
  return value;
}

bool parse_bool(const std::string& key, std::string_view text) {
  text = trim(text);
  if (text == "true" || text == "1" || text == "yes" || text == "on") return true;
  if (text == "false" || text == "0" || text == "no" || text == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + std::string(text) + "'");
}

template <typename T, typename Parse>
std::vector<T> parse_list(const std::string& key, std::string_view text, Parse parse) {
  std::vector<T> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto comma = text.find(',', start);
    const auto item = trim(text.substr(start, comma == std::string_view::npos ? text.npos
                                                                              : comma - start));
    if (item.empty()) throw ConfigError(key + ": empty list element");
    out.push_back(static_cast<T>(parse(key, item)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string format_exact(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string join(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ",";
    if constexpr (std::is_floating_point_v<T>) {
      out += format_exact(values[i]);
    } else {
      out += std::to_string(values[i]);
    }
  }
  return out;
}

const char* initial_name(bs_initial_state s) {
  switch (s) {
    case BS_INITIAL_GG0:
      return "gg0";
    case BS_INITIAL_EE0:
      return "ee0";
    case BS_INITIAL_PHI_PLUS_0:
      return "phi_plus_0";
    case BS_INITIAL_PHI_MINUS_0:
      return "phi_minus_0";
  }
  return "gg0";
}

bs_initial_state parse_initial(std::string_view text) {
  text = trim(text);
  if (text == "gg0") return BS_INITIAL_GG0;
  if (text == "ee0") return BS_INITIAL_EE0;
  if (text == "phi_plus_0") return BS_INITIAL_PHI_PLUS_0;
  if (text == "phi_minus_0") return BS_INITIAL_PHI_MINUS_0;
  throw ConfigError("initial_state: expected gg0, ee0, phi_plus_0 or phi_minus_0, got '" +
                    std::string(text) + "'");
}

// Keys of which at most one may be given per source; a later source
// replaces whichever one an earlier source used.
const std::vector<std::vector<std::string>>& exclusive_groups() {
  static const std::vector<std::vector<std::string>> groups{
      {"omega0_mhz", "omega0_over_kappa"},
      {"omega_nbar_mhz", "omega_nbar_over_kappa"},
  };
  return groups;
}

void check_exclusive(const Settings& s, const std::string& origin) {
  for (const auto& group : exclusive_groups()) {
    int present = 0;
    for (const auto& k : group) present += s.count(k) ? 1 : 0;
    if (present > 1) {
      throw ConfigError(origin + ": " + group[0] + " and " + group[1] +
                        " are mutually exclusive");
    }
  }
}

double require_positive(const std::string& key, double v) {
  if (!(v > 0.0)) throw ConfigError(key + " must be positive (got " + format_exact(v) + ")");
  return v;
}

double require_non_negative(const std::string& key, double v) {
  if (!(v >= 0.0)) {
    throw ConfigError(key + " must be non-negative (got " + format_exact(v) + ")");
  }
  return v;
}

}  // namespace

std::optional<Mode> parse_mode(std::string_view name) {
  if (name == "simulate") return Mode::Simulate;
  if (name == "sweep") return Mode::Sweep;
  if (name == "truncation") return Mode::Truncation;
  if (name == "oracles") return Mode::Oracles;
  if (name == "validate") return Mode::Validate;
  return std::nullopt;
}

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Simulate:
      return "simulate";
    case Mode::Sweep:
      return "sweep";
    case Mode::Truncation:
      return "truncation";
    case Mode::Oracles:
      return "oracles";
    case Mode::Validate:
      return "validate";
  }
  return "simulate";
}

const std::vector<KeyInfo>& config_keys() {
  static const std::vector<KeyInfo> keys{
      {"chi_A_mhz", "chi-a-mhz", "dispersive shift chi_A/2pi in MHz"},
      {"chi_B_mhz", "chi-b-mhz", "dispersive shift chi_B/2pi in MHz"},
      {"kappa_mhz", "kappa-mhz", "cavity linewidth kappa/2pi in MHz"},
      {"t1_us", "t1-us", "T1 of both qubits in us"},
      {"t2_us", "t2-us", "T2 of both qubits in us"},
      {"t1_A_us", "t1-a-us", "T1 of qubit A in us"},
      {"t1_B_us", "t1-b-us", "T1 of qubit B in us"},
      {"t2_A_us", "t2-a-us", "T2 of qubit A in us"},
      {"t2_B_us", "t2-b-us", "T2 of qubit B in us"},
      {"nbar", "nbar", "target mean photon number"},
      {"omega0_mhz", "omega0-mhz", "Bell-selection Rabi amplitude Omega0/2pi in MHz"},
      {"omega0_over_kappa", "omega0-over-kappa", "Omega0 as a multiple of kappa"},
      {"omega_nbar_mhz", "omega-nbar-mhz", "pump Rabi amplitude Omega_nbar/2pi in MHz"},
      {"omega_nbar_over_kappa", "omega-nbar-over-kappa", "Omega_nbar as a multiple of kappa"},
      {"epsilon_c_mhz", "epsilon-c-mhz", "cavity drive epsilon_c/2pi in MHz (default (kappa/2)sqrt(nbar))"},
      {"ncav", "ncav", "cavity truncation (0 = ceil(nbar+5 sqrt(nbar))+2)"},
      {"dt_ns", "dt-ns", "RK4 step in ns"},
      {"t_final_us", "t-final-us", "evolution time in us"},
      {"record_every", "record-every", "steps between recorded samples"},
      {"enforce_invariants", "enforce-invariants", "abort on invariant violations"},
      {"initial_state", "initial", "gg0, ee0, phi_plus_0 or phi_minus_0"},
      {"sweep_nbar", "sweep-nbar", "comma-separated nbar axis"},
      {"sweep_omega_over_kappa", "sweep-omega-over-kappa", "comma-separated Omega_nbar/kappa axis"},
      {"truncation_ncav", "truncation-ncav", "comma-separated cavity truncations"},
      {"threads", "threads", "worker threads for sweeps (0 = all cores)"},
      {"emit_plots", "emit-plots", "write SVG plots"},
      {"out_dir", "out", "output directory"},
  };
  return keys;
}

Settings parse_settings(std::string_view text, const std::string& origin) {
  Settings out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto sep = line.find_first_of(":=");
    const std::string where = origin + ":" + std::to_string(line_no);
    if (sep == std::string_view::npos) throw ConfigError(where + ": expected 'key: value'");
    const std::string key(trim(line.substr(0, sep)));
    const std::string value(trim(line.substr(sep + 1)));
    if (!known_key(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    if (value.empty()) throw ConfigError(where + ": missing value for '" + key + "'");
    if (!out.emplace(key, value).second) {
      throw ConfigError(where + ": duplicate key '" + key + "'");
    }
  }
  return out;
}

Settings read_settings_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_settings(buf.str(), path.string());
}

RunConfig resolve_config(Mode mode, const Settings& file, const Settings& overrides) {
  for (const auto& [key, value] : overrides) {
    if (!known_key(key)) throw ConfigError("unknown option '" + key + "'");
  }
  check_exclusive(file, "config");
  check_exclusive(overrides, "command line");

  Settings merged = file;
  for (const auto& [key, value] : overrides) {
    for (const auto& group : exclusive_groups()) {
      if (std::find(group.begin(), group.end(), key) == group.end()) continue;
      for (const auto& other : group) merged.erase(other);
    }
    // A both-qubit override replaces per-qubit values from the file.
    if (key == "t1_us") {
      merged.erase("t1_A_us");
      merged.erase("t1_B_us");
    }
    if (key == "t2_us") {
      merged.erase("t2_A_us");
      merged.erase("t2_B_us");
    }
    merged[key] = value;
  }

  auto get = [&](const char* key) -> const std::string* {
    const auto it = merged.find(key);
    return it == merged.end() ? nullptr : &it->second;
  };
  auto number = [&](const char* key, double fallback) {
    const auto* v = get(key);
    return v ? parse_double(key, *v) : fallback;
  };

  RunConfig cfg;
  cfg.mode = mode;
  const double chi_a = require_positive("chi_A_mhz", number("chi_A_mhz", 10.0));
  const double chi_b = require_positive("chi_B_mhz", number("chi_B_mhz", 9.5));
  const double kappa = require_positive("kappa_mhz", number("kappa_mhz", 2.0));
  const double t1 = number("t1_us", 50.0);
  const double t2 = number("t2_us", 50.0);
  const double t1_a = require_positive("t1_A_us", number("t1_A_us", t1));
  const double t1_b = require_positive("t1_B_us", number("t1_B_us", t1));
  const double t2_a = require_positive("t2_A_us", number("t2_A_us", t2));
  const double t2_b = require_positive("t2_B_us", number("t2_B_us", t2));
  const double nbar = require_non_negative("nbar", number("nbar", 4.0));

  double omega0 = 0.0;
  if (get("omega0_mhz")) {
    omega0 = require_non_negative("omega0_mhz", number("omega0_mhz", 0.0));
  } else {
    omega0 = require_non_negative("omega0_over_kappa", number("omega0_over_kappa", 0.5)) * kappa;
  }
  double omega_nbar = 0.0;
  if (get("omega_nbar_mhz")) {
    omega_nbar = require_non_negative("omega_nbar_mhz", number("omega_nbar_mhz", 0.0));
  } else {
    omega_nbar =
        require_non_negative("omega_nbar_over_kappa", number("omega_nbar_over_kappa", 1.0)) *
        kappa;
  }

  bs_params& p = cfg.params;
  p.chi_a = mhz_to_rad_per_us(chi_a);
  p.chi_b = mhz_to_rad_per_us(chi_b);
  p.kappa = mhz_to_rad_per_us(kappa);
  p.t1_a = t1_a;
  p.t1_b = t1_b;
  p.t2_a = t2_a;
  p.t2_b = t2_b;
  p.nbar = nbar;
  p.omega0 = mhz_to_rad_per_us(omega0);
  p.omega_nbar = mhz_to_rad_per_us(omega_nbar);
  if (get("epsilon_c_mhz")) {
    p.epsilon_c = mhz_to_rad_per_us(
        require_non_negative("epsilon_c_mhz", number("epsilon_c_mhz", 0.0)));
    p.epsilon_c_set = 1;
  }
  if (const auto* v = get("ncav")) {
    const long n = parse_integer("ncav", *v);
    if (n < 0 || n == 1) throw ConfigError("ncav must be 0 (automatic) or at least 2");
    p.ncav = static_cast<int>(n);
  }

  bs_evolution_default(&cfg.evolution);
  cfg.evolution.dt = require_positive("dt_ns", number("dt_ns", cfg.evolution.dt * 1e3)) * 1e-3;
  cfg.evolution.t_final = require_positive("t_final_us", number("t_final_us", cfg.evolution.t_final));
  if (const auto* v = get("record_every")) {
    const long n = parse_integer("record_every", *v);
    if (n < 1) throw ConfigError("record_every must be at least 1");
    cfg.evolution.record_every = static_cast<int>(n);
  }
  if (const auto* v = get("enforce_invariants")) {
    cfg.evolution.enforce_invariants = parse_bool("enforce_invariants", *v) ? 1 : 0;
  }
  if (cfg.evolution.t_final < cfg.evolution.dt) {
    throw ConfigError("t_final_us must be at least one step (dt_ns)");
  }

  if (const auto* v = get("initial_state")) cfg.initial = parse_initial(*v);
  cfg.sweep_nbar = get("sweep_nbar") ? parse_list<double>("sweep_nbar", *get("sweep_nbar"), parse_double)
                                     : std::vector<double>{1, 2, 3, 4, 5, 6, 7, 8};
  cfg.sweep_omega_ratio =
      get("sweep_omega_over_kappa")
          ? parse_list<double>("sweep_omega_over_kappa", *get("sweep_omega_over_kappa"),
                               parse_double)
          : std::vector<double>{0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0};
  for (double v : cfg.sweep_nbar) require_non_negative("sweep_nbar", v);
  for (double v : cfg.sweep_omega_ratio) require_non_negative("sweep_omega_over_kappa", v);
  cfg.truncation_ncav =
      get("truncation_ncav")
          ? parse_list<int>("truncation_ncav", *get("truncation_ncav"), parse_integer)
          : std::vector<int>{10, 12, 14, 16, 18, 20};
  if (const auto* v = get("threads")) {
    const long n = parse_integer("threads", *v);
    if (n < 0) throw ConfigError("threads must be non-negative");
    cfg.threads = static_cast<unsigned>(n);
  }
  if (const auto* v = get("emit_plots")) cfg.emit_plots = parse_bool("emit_plots", *v);
  if (const auto* v = get("out_dir")) cfg.out_dir = *v;

  if (bs_params_validate(&cfg.params) != BS_OK) throw ConfigError(bs_last_error());
  return cfg;
}

Settings echo_settings(const RunConfig& c) {
  const bs_params& p = c.params;
  Settings s;
  s["chi_A_mhz"] = format_exact(rad_per_us_to_mhz(p.chi_a));
  s["chi_B_mhz"] = format_exact(rad_per_us_to_mhz(p.chi_b));
  s["kappa_mhz"] = format_exact(rad_per_us_to_mhz(p.kappa));
  s["t1_A_us"] = format_exact(p.t1_a);
  s["t1_B_us"] = format_exact(p.t1_b);
  s["t2_A_us"] = format_exact(p.t2_a);
  s["t2_B_us"] = format_exact(p.t2_b);
  s["nbar"] = format_exact(p.nbar);
  s["omega0_mhz"] = format_exact(rad_per_us_to_mhz(p.omega0));
  s["omega_nbar_mhz"] = format_exact(rad_per_us_to_mhz(p.omega_nbar));
  if (p.epsilon_c_set) s["epsilon_c_mhz"] = format_exact(rad_per_us_to_mhz(p.epsilon_c));
  s["ncav"] = std::to_string(p.ncav);
  s["dt_ns"] = format_exact(c.evolution.dt * 1e3);
  s["t_final_us"] = format_exact(c.evolution.t_final);
  s["record_every"] = std::to_string(c.evolution.record_every);
  s["enforce_invariants"] = c.evolution.enforce_invariants ? "true" : "false";
  s["initial_state"] = initial_name(c.initial);
  s["sweep_nbar"] = join(c.sweep_nbar);
  s["sweep_omega_over_kappa"] = join(c.sweep_omega_ratio);
  s["truncation_ncav"] = join(c.truncation_ncav);
  s["threads"] = std::to_string(c.threads);
  s["emit_plots"] = c.emit_plots ? "true" : "false";
  s["out_dir"] = c.out_dir.string();
  return s;
}

}  // namespace bellstab::cli
