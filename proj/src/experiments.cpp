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

#include "experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>
#include <sstream>
#include <thread>

namespace bellstab {

DenseVector initial_vector(InitialState which, const SpaceLayout& layout) {
  DenseVector qubits;
  switch (which) {
    case InitialState::GG0:
      qubits = basis_vector(4, 0);
      break;
    case InitialState::EE0:
      qubits = basis_vector(4, 3);
      break;
    case InitialState::PhiPlus0:
      qubits = bell_state(BellSign::Plus).amplitudes();
      break;
    case InitialState::PhiMinus0:
      qubits = bell_state(BellSign::Minus).amplitudes();
      break;
  }
  return kron(qubits, basis_vector(layout.ncav(), 0));
}

SteadyState steady_summary(const std::vector<ObservableRecord>& records, double t_final) {
  SteadyState s;
  s.window_start = t_final * (1.0 - kSteadyWindowFraction);
  // Sample times are k*dt and may sit one rounding step below the window edge.
  const double edge = s.window_start - 1e-9 * std::max(1.0, t_final);
  double f_sum = 0.0, f_sq = 0.0, b_sum = 0.0, b_sq = 0.0;
  for (const auto& r : records) {
    if (r.t < edge) continue;
    ++s.samples;
    f_sum += r.fidelity;
    f_sq += r.fidelity * r.fidelity;
    b_sum += r.chsh;
    b_sq += r.chsh * r.chsh;
  }
  if (s.samples == 0) return s;
  const double n = static_cast<double>(s.samples);
  s.fidelity_mean = f_sum / n;
  s.chsh_mean = b_sum / n;
  s.fidelity_spread = std::sqrt(std::max(f_sq / n - s.fidelity_mean * s.fidelity_mean, 0.0));
  s.chsh_spread = std::sqrt(std::max(b_sq / n - s.chsh_mean * s.chsh_mean, 0.0));
  return s;
}

TimeSeries evolve(const DensityState& initial, const SystemParams& params,
                  const EvolutionConfig& config) {
  params.validate(false);
  config.validate();
  const SpaceLayout layout(params.resolved_ncav());
  if (initial.rho.rows() != layout.dim()) {
    throw DimensionError("evolve: initial state does not match the cavity truncation");
  }
  if (initial.trace_deviation() >= kTraceTolerance ||
      initial.hermiticity_deviation() >= kHermiticityTolerance ||
      initial.min_eigenvalue() <= kPositivityTolerance) {
    throw std::invalid_argument("evolve: initial state is not a valid density matrix");
  }
  const auto generator =
      LindbladGenerator::driven(DrivenHamiltonian(params, layout), collapse_channels(params, layout));

  TimeSeries ts;
  ts.params = params;
  ts.evolution = config;
  ts.records.reserve(static_cast<std::size_t>(config.steps() / config.record_every + 1));
  const auto result = integrate(initial, generator, config, [&](const DensityState& s) {
    ts.records.push_back(observe(s, layout));
  });
  ts.invariants = result.stats;
  ts.steady = steady_summary(ts.records, initial.t + config.t_final);
  return ts;
}

TimeSeries run_time_series(const SystemParams& params, const EvolutionConfig& config,
                           InitialState initial) {
  params.validate();
  const SpaceLayout layout(params.resolved_ncav());
  return evolve(DensityState::pure(initial_vector(initial, layout)), params, config);
}

SystemParams sweep_point_params(const SystemParams& base, double nbar, double omega_ratio) {
  SystemParams p = base;
  p.nbar = nbar;
  p.omega_nbar = omega_ratio * base.kappa;
  p.epsilon_c.reset();
  return p;
}

SweepResult run_sweep(const SystemParams& base, const EvolutionConfig& config,
                      const std::vector<double>& nbar_values,
                      const std::vector<double>& omega_ratio_values, unsigned threads) {
  if (nbar_values.empty() || omega_ratio_values.empty()) {
    throw std::invalid_argument("run_sweep: both axes must be nonempty");
  }
  config.validate();
  SweepResult result;
  result.nbar_values = nbar_values;
  result.omega_ratio_values = omega_ratio_values;
  result.points.resize(nbar_values.size() * omega_ratio_values.size());
  for (std::size_t i = 0; i < nbar_values.size(); ++i) {
    for (std::size_t j = 0; j < omega_ratio_values.size(); ++j) {
      auto& pt = result.points[i * omega_ratio_values.size() + j];
      pt.nbar = nbar_values[i];
      pt.omega_ratio = omega_ratio_values[j];
    }
  }

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < result.points.size(); k = next++) {
      auto& pt = result.points[k];
      try {
        const auto ts = run_time_series(sweep_point_params(base, pt.nbar, pt.omega_ratio), config,
                                        InitialState::GG0);
        pt.fidelity = ts.steady.fidelity_mean;
        pt.chsh = ts.steady.chsh_mean;
        pt.ok = true;
      } catch (const std::exception& e) {
        pt.ok = false;
        pt.error = e.what();
      }
    }
  };
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(result.points.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return result;
}

std::vector<TruncationRow> truncation_study(const SystemParams& params,
                                            const EvolutionConfig& config,
                                            const std::vector<int>& ncav_values) {
  if (ncav_values.empty()) throw std::invalid_argument("truncation_study: no truncations given");
  for (std::size_t k = 1; k < ncav_values.size(); ++k) {
    if (ncav_values[k] <= ncav_values[k - 1]) {
      throw std::invalid_argument("truncation_study: N values must be strictly increasing");
    }
  }
  std::vector<TruncationRow> rows;
  for (int n : ncav_values) {
    TruncationRow row;
    row.ncav = n;
    row.below_recommended = n < min_ncav(params.nbar);
    if (n < params.nbar + 2.0 || n < 2) {
      row.note = "invalid: truncation below nbar + 2";
      rows.push_back(row);
      continue;
    }
    row.valid = true;
    SystemParams p = params;
    p.ncav = n;
    try {
      p.validate(false);
      const SpaceLayout layout(n);
      const auto ts = evolve(DensityState::pure(initial_vector(InitialState::GG0, layout)), p, config);
      row.fidelity = ts.steady.fidelity_mean;
      row.chsh = ts.steady.chsh_mean;
      if (row.below_recommended) row.note = "below recommended truncation";
    } catch (const std::exception& e) {
      row.valid = false;
      row.note = std::string("failed: ") + e.what();
    }
    rows.push_back(row);
  }
  return rows;
}

bool OracleReport::all_passed() const {
  return std::all_of(entries.begin(), entries.end(), [](const auto& e) { return e.passed; });
}

namespace {

// Largest relative error between sampled values and an analytic curve,
// restricted to samples where the reference is at least `floor`.
struct CurveCheck {
  double max_rel = 0.0;
  int compared = 0;
  void add(double measured, double expected, double floor = 0.0) {
    if (std::abs(expected) < floor) return;
    max_rel = std::max(max_rel, std::abs(measured - expected) / std::abs(expected));
    ++compared;
  }
};

OracleEntry make_entry(std::string name, double error, double tolerance, std::string detail) {
  return {std::move(name), error, tolerance, error <= tolerance, std::move(detail)};
}

OracleEntry t1_decay_oracle(double dt) {
  const double t1 = 50.0;
  const Operator sm = pauli(Pauli::Minus);
  const auto gen = LindbladGenerator::constant(Operator::zero(2), {{"relaxation", 1.0 / t1, sm}});
  EvolutionConfig cfg{dt, t1, 1, true};
  cfg.record_every = static_cast<int>(std::max<std::int64_t>(1, cfg.steps() / 4));
  CurveCheck check;
  integrate(DensityState::pure(basis_vector(2, 1)), gen, cfg, [&](const DensityState& s) {
    check.add(s.rho(1, 1).real(), std::exp(-s.t / t1));
  });
  return make_entry("t1_decay", check.max_rel, 1e-3,
                    "rho_ee(t) vs exp(-t/T1), T1 = 50 us, t up to T1");
}

OracleEntry cavity_decay_oracle(double dt) {
  const int ncav = 25;
  const double kappa = mhz_to_rad_per_us(2.0);
  const Operator a = annihilation(ncav);
  const Operator number = a.adjoint() * a;
  const auto gen = LindbladGenerator::constant(Operator::zero(ncav), {{"cavity_loss", kappa, a}});
  EvolutionConfig cfg{dt, 2.0 / kappa, 1, true};
  cfg.record_every = static_cast<int>(std::max<std::int64_t>(1, cfg.steps() / 4));
  CurveCheck check;
  integrate(DensityState::pure(coherent_state(ncav, Complex(2.0, 0.0))), gen, cfg,
            [&](const DensityState& s) {
              check.add(expectation_real(number, s.rho), 4.0 * std::exp(-kappa * s.t));
            });
  return make_entry("cavity_decay", check.max_rel, 1e-3,
                    "<a^dag a>(t) vs 4 exp(-kappa t), |alpha|^2 = 4, t up to 2/kappa");
}

OracleEntry rabi_oracle(double dt) {
  const double omega = mhz_to_rad_per_us(10.0);
  const auto gen = LindbladGenerator::constant(pauli(Pauli::X) * omega, {});
  const double sample_every = 0.01;
  EvolutionConfig cfg{dt, 0.1, 1, false};
  cfg.record_every = static_cast<int>(std::max<long>(1, std::lround(sample_every / dt)));
  CurveCheck check;
  integrate(DensityState::pure(basis_vector(2, 0)), gen, cfg, [&](const DensityState& s) {
    const double expected = std::pow(std::sin(omega * s.t), 2);
    check.add(s.rho(1, 1).real(), expected, 0.05);
  });
  return make_entry("rabi", check.max_rel, 1e-3,
                    "P_e(t) vs sin^2(Omega t), Omega/2pi = 10 MHz, samples with P_e >= 0.05");
}

DenseMatrix random_density_matrix(Eigen::Index dim, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  DenseMatrix g(dim, dim);
  for (Eigen::Index j = 0; j < dim; ++j) {
    for (Eigen::Index i = 0; i < dim; ++i) g(i, j) = Complex(normal(rng), normal(rng));
  }
  DenseMatrix rho = g * g.adjoint();
  rho /= rho.trace();
  return rho;
}

OracleEntry trace_identity_oracle() {
  const SystemParams params = SystemParams::reference();
  const SpaceLayout layout(params.resolved_ncav());
  const auto gen = LindbladGenerator::driven(DrivenHamiltonian(params, layout),
                                             collapse_channels(params, layout));
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const DenseMatrix rho = random_density_matrix(layout.dim(), seed);
    const double t = 0.137 * static_cast<double>(seed);
    worst = std::max(worst, std::abs(gen.apply(t, rho).trace()));
    worst = std::max(worst, std::abs(lindblad_rhs(gen.hamiltonian(t), gen.channels(), rho).trace()));
  }
  return make_entry("lindblad_trace_identity", worst, 1e-12,
                    "|tr L(rho)| over random density matrices, fast and reference generators");
}

OracleEntry generator_agreement_oracle() {
  const SystemParams params = SystemParams::reference();
  const SpaceLayout layout(params.resolved_ncav());
  const auto gen = LindbladGenerator::driven(DrivenHamiltonian(params, layout),
                                             collapse_channels(params, layout));
  double worst = 0.0;
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const DenseMatrix rho = random_density_matrix(layout.dim(), seed);
    const double t = 0.05 * static_cast<double>(seed);
    const DenseMatrix ref = lindblad_rhs(build_hamiltonian(params, t), gen.channels(), rho);
    worst = std::max(worst, (gen.apply(t, rho) - ref).cwiseAbs().maxCoeff());
  }
  return make_entry("generator_matches_reference", worst, 1e-10,
                    "max |fast - dense reference| of the master-equation right-hand side");
}

OracleEntry chsh_identity_oracle() {
  const double err =
      (chsh_operator().dense() - chsh_operator_compact().dense()).cwiseAbs().maxCoeff();
  return make_entry("chsh_algebraic_identity", err, 1e-15,
                    "four-term CHSH operator vs -sqrt(2)(sx sx + sy sy)");
}

OracleEntry unitary_oracle(double dt) {
  SystemParams params = SystemParams::reference();
  const SpaceLayout layout(params.resolved_ncav());
  const auto gen = LindbladGenerator::driven(DrivenHamiltonian(params, layout), {});
  EvolutionConfig cfg{dt, 0.5, 1, false};
  cfg.record_every = static_cast<int>(std::max<std::int64_t>(1, cfg.steps() / 5));
  double worst = 0.0;
  integrate(DensityState::pure(initial_vector(InitialState::GG0, layout)), gen, cfg,
            [&](const DensityState& s) {
              const double purity = (s.rho * s.rho).trace().real();
              worst = std::max(worst, std::abs(purity - 1.0));
            });
  return make_entry("unitary_purity", worst, 1e-3,
                    "1 - tr(rho^2) under the driven Hamiltonian with no channels, 0.5 us");
}

}  // namespace

OracleReport oracle_suite(double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("oracle_suite: dt must be positive");
  OracleReport report;
  report.dt = dt;
  auto guarded = [&](const char* name, auto&& fn) {
    try {
      report.entries.push_back(fn());
    } catch (const std::exception& e) {
      report.entries.push_back({name, std::numeric_limits<double>::infinity(), 0.0, false,
                                std::string("aborted: ") + e.what()});
    }
  };
  guarded("t1_decay", [&] { return t1_decay_oracle(dt); });
  guarded("cavity_decay", [&] { return cavity_decay_oracle(dt); });
  guarded("rabi", [&] { return rabi_oracle(dt); });
  guarded("lindblad_trace_identity", [] { return trace_identity_oracle(); });
  guarded("generator_matches_reference", [] { return generator_agreement_oracle(); });
  guarded("chsh_algebraic_identity", [] { return chsh_identity_oracle(); });
  guarded("unitary_purity", [&] { return unitary_oracle(dt); });
  return report;
}

}  // namespace bellstab
