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

#include "bellstab/bellstab.h"

#include <string>
#include <vector>

#include "experiments.hpp"

struct bs_timeseries {
  bellstab::TimeSeries value;
};

struct bs_sweep {
  bellstab::SweepResult value;
};

struct bs_truncation {
  std::vector<bellstab::TruncationRow> rows;
};

struct bs_oracle_report {
  bellstab::OracleReport value;
};

struct bs_regime_report {
  std::vector<bellstab::RegimeCheck> checks;
};

namespace {

thread_local std::string g_last_error;

bs_status fail(bs_status status, std::string message) {
  g_last_error = std::move(message);
  return status;
}

// Runs `body`, mapping exceptions onto status codes.
template <typename F>
bs_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return BS_OK;
  } catch (const bellstab::InvalidParams& e) {
    return fail(BS_INVALID_PARAMS, e.what());
  } catch (const bellstab::EvolutionAborted& e) {
    return fail(BS_EVOLUTION_ABORTED, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(BS_INVALID_ARGUMENT, e.what());
  } catch (const std::exception& e) {
    return fail(BS_INTERNAL_ERROR, e.what());
  } catch (...) {
    return fail(BS_INTERNAL_ERROR, "unknown error");
  }
}

bellstab::SystemParams to_cpp(const bs_params& p) {
  bellstab::SystemParams out;
  out.chi_a = p.chi_a;
  out.chi_b = p.chi_b;
  out.kappa = p.kappa;
  out.t1_a = p.t1_a;
  out.t1_b = p.t1_b;
  out.t2_a = p.t2_a;
  out.t2_b = p.t2_b;
  out.nbar = p.nbar;
  out.omega0 = p.omega0;
  out.omega_nbar = p.omega_nbar;
  if (p.epsilon_c_set) out.epsilon_c = p.epsilon_c;
  out.ncav = p.ncav;
  return out;
}

bs_params to_c(const bellstab::SystemParams& p) {
  bs_params out{};
  out.chi_a = p.chi_a;
  out.chi_b = p.chi_b;
  out.kappa = p.kappa;
  out.t1_a = p.t1_a;
  out.t1_b = p.t1_b;
  out.t2_a = p.t2_a;
  out.t2_b = p.t2_b;
  out.nbar = p.nbar;
  out.omega0 = p.omega0;
  out.omega_nbar = p.omega_nbar;
  out.epsilon_c_set = p.epsilon_c.has_value() ? 1 : 0;
  out.epsilon_c = p.epsilon_c.value_or(0.0);
  out.ncav = p.ncav;
  return out;
}

bellstab::EvolutionConfig to_cpp(const bs_evolution& e) {
  return {e.dt, e.t_final, e.record_every, e.enforce_invariants != 0};
}

bellstab::InitialState to_cpp(bs_initial_state s) {
  switch (s) {
    case BS_INITIAL_GG0:
      return bellstab::InitialState::GG0;
    case BS_INITIAL_EE0:
      return bellstab::InitialState::EE0;
    case BS_INITIAL_PHI_PLUS_0:
      return bellstab::InitialState::PhiPlus0;
    case BS_INITIAL_PHI_MINUS_0:
      return bellstab::InitialState::PhiMinus0;
  }
  throw std::invalid_argument("unknown initial state");
}

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

}  // namespace

extern "C" {

const char* bs_version(void) { return "1.0.0"; }

const char* bs_status_string(bs_status status) {
  switch (status) {
    case BS_OK:
      return "ok";
    case BS_INVALID_ARGUMENT:
      return "invalid argument";
    case BS_INVALID_PARAMS:
      return "invalid parameters";
    case BS_EVOLUTION_ABORTED:
      return "evolution aborted";
    case BS_INTERNAL_ERROR:
      return "internal error";
  }
  return "unknown status";
}

const char* bs_last_error(void) { return g_last_error.c_str(); }

bs_status bs_params_reference(bs_params* out) {
  return guarded([&] {
    require(out != nullptr, "bs_params_reference: null output");
    *out = to_c(bellstab::SystemParams::reference());
  });
}

bs_status bs_params_validate(const bs_params* params) {
  return guarded([&] {
    require(params != nullptr, "bs_params_validate: null params");
    to_cpp(*params).validate();
  });
}

bs_status bs_evolution_default(bs_evolution* out) {
  return guarded([&] {
    require(out != nullptr, "bs_evolution_default: null output");
    const bellstab::EvolutionConfig c;
    *out = {c.dt, c.t_final, c.record_every, c.enforce_invariants ? 1 : 0};
  });
}

bs_status bs_dispersive_shift(double g, double delta, double* chi, int* degraded) {
  return guarded([&] {
    require(chi != nullptr, "bs_dispersive_shift: null output");
    const auto r = bellstab::dispersive_shift(g, delta);
    *chi = r.chi;
    if (degraded) *degraded = r.approximation_degraded ? 1 : 0;
  });
}

bs_status bs_epsilon_c_default(double kappa, double nbar, double* out) {
  return guarded([&] {
    require(out != nullptr, "bs_epsilon_c_default: null output");
    *out = bellstab::epsilon_c_default(kappa, nbar);
  });
}

bs_status bs_validity_ratio(const bs_params* params, double* out) {
  return guarded([&] {
    require(params != nullptr && out != nullptr, "bs_validity_ratio: null argument");
    *out = bellstab::validity_ratio(to_cpp(*params));
  });
}

bs_status bs_min_ncav(double nbar, int* out) {
  return guarded([&] {
    require(out != nullptr, "bs_min_ncav: null output");
    *out = bellstab::min_ncav(nbar);
  });
}

bs_status bs_default_ncav(double nbar, int* out) {
  return guarded([&] {
    require(out != nullptr, "bs_default_ncav: null output");
    *out = bellstab::default_ncav(nbar);
  });
}

bs_status bs_regime_checks(const bs_params* params, bs_regime_report** out) {
  return guarded([&] {
    require(params != nullptr && out != nullptr, "bs_regime_checks: null argument");
    *out = nullptr;
    *out = new bs_regime_report{bellstab::regime_checks(to_cpp(*params))};
  });
}

size_t bs_regime_report_size(const bs_regime_report* report) {
  return report ? report->checks.size() : 0;
}

bs_status bs_regime_report_get(const bs_regime_report* report, size_t i, bs_regime_check* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "bs_regime_report_get: null argument");
    require(i < report->checks.size(), "bs_regime_report_get: index out of range");
    const auto& c = report->checks[i];
    *out = {c.name.c_str(), c.relation.c_str(), c.value, c.threshold, c.passed ? 1 : 0};
  });
}

void bs_regime_report_free(bs_regime_report* report) { delete report; }

bs_status bs_run_time_series(const bs_params* params, const bs_evolution* evolution,
                             bs_initial_state initial, bs_timeseries** out) {
  return guarded([&] {
    require(params != nullptr && evolution != nullptr && out != nullptr,
            "bs_run_time_series: null argument");
    *out = nullptr;
    auto ts = bellstab::run_time_series(to_cpp(*params), to_cpp(*evolution), to_cpp(initial));
    *out = new bs_timeseries{std::move(ts)};
  });
}

size_t bs_timeseries_size(const bs_timeseries* ts) { return ts ? ts->value.records.size() : 0; }

bs_status bs_timeseries_record(const bs_timeseries* ts, size_t i, bs_record* out) {
  return guarded([&] {
    require(ts != nullptr && out != nullptr, "bs_timeseries_record: null argument");
    require(i < ts->value.records.size(), "bs_timeseries_record: index out of range");
    const auto& r = ts->value.records[i];
    *out = {r.t, r.fidelity, r.chsh, r.photon_number, r.p_gg, r.p_ee, r.p_odd};
  });
}

bs_status bs_timeseries_steady(const bs_timeseries* ts, bs_steady_state* out) {
  return guarded([&] {
    require(ts != nullptr && out != nullptr, "bs_timeseries_steady: null argument");
    const auto& s = ts->value.steady;
    *out = {s.window_start, s.samples, s.fidelity_mean, s.fidelity_spread, s.chsh_mean,
            s.chsh_spread};
  });
}

bs_status bs_timeseries_invariants(const bs_timeseries* ts, bs_invariants* out) {
  return guarded([&] {
    require(ts != nullptr && out != nullptr, "bs_timeseries_invariants: null argument");
    const auto& s = ts->value.invariants;
    *out = {s.max_trace_deviation, s.max_hermiticity_deviation, s.min_eigenvalue,
            s.renormalizations, s.samples};
  });
}

void bs_timeseries_free(bs_timeseries* ts) { delete ts; }

bs_status bs_run_sweep(const bs_params* base, const bs_evolution* evolution,
                       const double* nbar_values, size_t n_nbar, const double* omega_ratio_values,
                       size_t n_omega, unsigned threads, bs_sweep** out) {
  return guarded([&] {
    require(base != nullptr && evolution != nullptr && out != nullptr,
            "bs_run_sweep: null argument");
    require(n_nbar > 0 && n_omega > 0 && nbar_values != nullptr && omega_ratio_values != nullptr,
            "bs_run_sweep: both axes must be nonempty");
    *out = nullptr;
    auto result = bellstab::run_sweep(to_cpp(*base), to_cpp(*evolution),
                                      std::vector<double>(nbar_values, nbar_values + n_nbar),
                                      std::vector<double>(omega_ratio_values,
                                                          omega_ratio_values + n_omega),
                                      threads);
    *out = new bs_sweep{std::move(result)};
  });
}

size_t bs_sweep_nbar_count(const bs_sweep* sweep) {
  return sweep ? sweep->value.nbar_values.size() : 0;
}

size_t bs_sweep_omega_count(const bs_sweep* sweep) {
  return sweep ? sweep->value.omega_ratio_values.size() : 0;
}

bs_status bs_sweep_point_get(const bs_sweep* sweep, size_t i_nbar, size_t j_omega,
                             bs_sweep_point* out) {
  return guarded([&] {
    require(sweep != nullptr && out != nullptr, "bs_sweep_point_get: null argument");
    require(i_nbar < sweep->value.nbar_values.size() &&
                j_omega < sweep->value.omega_ratio_values.size(),
            "bs_sweep_point_get: index out of range");
    const auto& p = sweep->value.at(i_nbar, j_omega);
    *out = {p.nbar, p.omega_ratio, p.ok ? 1 : 0, p.fidelity, p.chsh, p.error.c_str()};
  });
}

void bs_sweep_free(bs_sweep* sweep) { delete sweep; }

bs_status bs_run_truncation(const bs_params* params, const bs_evolution* evolution,
                            const int* ncav_values, size_t n, bs_truncation** out) {
  return guarded([&] {
    require(params != nullptr && evolution != nullptr && out != nullptr,
            "bs_run_truncation: null argument");
    require(n > 0 && ncav_values != nullptr, "bs_run_truncation: no truncations given");
    *out = nullptr;
    auto rows = bellstab::truncation_study(to_cpp(*params), to_cpp(*evolution),
                                           std::vector<int>(ncav_values, ncav_values + n));
    *out = new bs_truncation{std::move(rows)};
  });
}

size_t bs_truncation_size(const bs_truncation* study) { return study ? study->rows.size() : 0; }

bs_status bs_truncation_row_get(const bs_truncation* study, size_t i, bs_truncation_row* out) {
  return guarded([&] {
    require(study != nullptr && out != nullptr, "bs_truncation_row_get: null argument");
    require(i < study->rows.size(), "bs_truncation_row_get: index out of range");
    const auto& r = study->rows[i];
    *out = {r.ncav, r.valid ? 1 : 0, r.below_recommended ? 1 : 0, r.fidelity, r.chsh,
            r.note.c_str()};
  });
}

void bs_truncation_free(bs_truncation* study) { delete study; }

bs_status bs_run_oracles(double dt, bs_oracle_report** out) {
  return guarded([&] {
    require(out != nullptr, "bs_run_oracles: null output");
    *out = nullptr;
    *out = new bs_oracle_report{bellstab::oracle_suite(dt)};
  });
}

size_t bs_oracle_report_size(const bs_oracle_report* report) {
  return report ? report->value.entries.size() : 0;
}

bs_status bs_oracle_report_get(const bs_oracle_report* report, size_t i, bs_oracle_entry* out) {
  return guarded([&] {
    require(report != nullptr && out != nullptr, "bs_oracle_report_get: null argument");
    require(i < report->value.entries.size(), "bs_oracle_report_get: index out of range");
    const auto& e = report->value.entries[i];
    *out = {e.name.c_str(), e.error, e.tolerance, e.passed ? 1 : 0, e.detail.c_str()};
  });
}

int bs_oracle_report_all_passed(const bs_oracle_report* report) {
  return report && report->value.all_passed() ? 1 : 0;
}

void bs_oracle_report_free(bs_oracle_report* report) { delete report; }

}  // extern "C"
