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

#include <optional>
#include <string>
#include <vector>

#include "lindblad.hpp"
#include "observables.hpp"
#include "system_model.hpp"

namespace bellstab {

enum class InitialState { GG0, EE0, PhiPlus0, PhiMinus0 };

/// |gg,0>, |ee,0>, |phi_+,0> or |phi_-,0> on the full space.
DenseVector initial_vector(InitialState which, const SpaceLayout& layout);

/// Fraction of [0, t_final] at the end of a run that is averaged for the
/// steady-state summary.
inline constexpr double kSteadyWindowFraction = 0.25;

struct SteadyState {
  double window_start = 0.0;
  std::size_t samples = 0;
  double fidelity_mean = 0.0;
  double fidelity_spread = 0.0;  // standard deviation over the window
  double chsh_mean = 0.0;
  double chsh_spread = 0.0;
};

struct TimeSeries {
  SystemParams params;
  EvolutionConfig evolution;
  std::vector<ObservableRecord> records;
  SteadyState steady;
  InvariantStats invariants;
};

/// Mean and standard deviation of fidelity and CHSH over records with
/// t >= t_final (1 - kSteadyWindowFraction).
SteadyState steady_summary(const std::vector<ObservableRecord>& records, double t_final);

/// Evolves `initial` under the protocol generator of `params` and records
/// observables every config.record_every steps.
TimeSeries evolve(const DensityState& initial, const SystemParams& params,
                  const EvolutionConfig& config);

TimeSeries run_time_series(const SystemParams& params, const EvolutionConfig& config,
                           InitialState initial = InitialState::GG0);

struct SweepPoint {
  double nbar = 0.0;
  double omega_ratio = 0.0;  // Omega_nbar / kappa
  bool ok = false;
  double fidelity = 0.0;
  double chsh = 0.0;
  std::string error;
};

/// Steady-state figures of merit on the (nbar, Omega_nbar/kappa) grid.
/// Points are stored row-major with nbar as the slow index.
struct SweepResult {
  std::vector<double> nbar_values;
  std::vector<double> omega_ratio_values;
  std::vector<SweepPoint> points;

  const SweepPoint& at(std::size_t i_nbar, std::size_t j_omega) const {
    return points[i_nbar * omega_ratio_values.size() + j_omega];
  }
};

/// Parameters for one sweep point: nbar and Omega_nbar replaced, epsilon_c
/// re-derived from nbar.
SystemParams sweep_point_params(const SystemParams& base, double nbar, double omega_ratio);

/// Runs every grid point from |gg,0>. A failing point is recorded with its
/// error and the sweep continues. `threads` = 0 uses the hardware
/// concurrency; results do not depend on the thread count.
SweepResult run_sweep(const SystemParams& base, const EvolutionConfig& config,
                      const std::vector<double>& nbar_values,
                      const std::vector<double>& omega_ratio_values, unsigned threads = 0);

struct TruncationRow {
  int ncav = 0;
  bool valid = false;              // ncav >= nbar + 2; invalid rows are not simulated
  bool below_recommended = false;  // ncav < ceil(nbar + 5 sqrt(nbar))
  double fidelity = 0.0;
  double chsh = 0.0;
  std::string note;
};

/// Steady fidelity for each cavity truncation. `ncav_values` must be
/// strictly increasing.
std::vector<TruncationRow> truncation_study(const SystemParams& params,
                                            const EvolutionConfig& config,
                                            const std::vector<int>& ncav_values);

struct OracleEntry {
  std::string name;
  double error = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct OracleReport {
  double dt = 0.0;
  std::vector<OracleEntry> entries;
  bool all_passed() const;
};

/// Analytic checks of the integrator and observables: T1 decay, cavity
/// coherent-state decay, resonant Rabi oscillation, trace preservation of
/// the generator, CHSH operator identity and unitary purity preservation.
OracleReport oracle_suite(double dt = EvolutionConfig{}.dt);

}  // namespace bellstab
