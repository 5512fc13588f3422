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

// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "experiments.hpp"

using namespace bellstab;

namespace {

int failures = 0;

void report(int id, const char* name, bool ok, const std::string& detail) {
  std::printf("[%s] %d %s: %s\n", ok ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, a, b, c);
  return buf;
}

SystemParams reference_with_ncav(int ncav) {
  SystemParams p = SystemParams::reference();
  p.ncav = ncav;
  return p;
}

}  // namespace

int main() {
  const auto started = std::chrono::steady_clock::now();
  const EvolutionConfig cfg;  // dt 0.2 ns, 20 us, sample every 0.1 us
  const SystemParams ref = reference_with_ncav(16);

  const TimeSeries base = run_time_series(ref, cfg, InitialState::GG0);
  const double f_base = base.steady.fidelity_mean;
  const double b_base = base.steady.chsh_mean;

  // 1. Steady fidelity and CHSH of the reference run.
  {
    const bool ok = f_base >= 0.92 && f_base <= 0.96 && b_base >= 2.56 && b_base <= 2.72;
    report(1, "steady-state reproduction", ok,
           fmt("fidelity %.5f in [0.92, 0.96], CHSH %.5f in [2.56, 2.72]", f_base, b_base));
  }

  // 2. Bell violation persists after 5 us.
  {
    double worst = INFINITY;
    std::size_t n = 0;
    for (const auto& r : base.records) {
      if (r.t > 5.0) {
        worst = std::min(worst, r.chsh);
        ++n;
      }
    }
    report(2, "Bell violation persistence", n > 0 && worst > 2.0,
           fmt("min CHSH over %g samples with t > 5 us = %.5f (> 2)", double(n), worst));
  }

  // 3. Plateau of the (nbar, Omega_nbar/kappa) map.
  {
    const std::vector<double> nbar{3.0, 4.0, 5.0};
    const std::vector<double> omega{0.5, 1.0};
    const SweepResult sweep = run_sweep(SystemParams::reference(), cfg, nbar, omega);
    bool ok = true;
    double worst = INFINITY;
    std::string cells;
    for (std::size_t i = 0; i < nbar.size(); ++i) {
      for (std::size_t j = 0; j < omega.size(); ++j) {
        const auto& pt = sweep.at(i, j);
        ok = ok && pt.ok && pt.fidelity > 0.92;
        worst = std::min(worst, pt.ok ? pt.fidelity : -1.0);
        cells += fmt(" (%g,%g)=%.4f", pt.nbar, pt.omega_ratio, pt.ok ? pt.fidelity : NAN);
      }
    }
    report(3, "fidelity plateau", ok, fmt("min fidelity %.5f (> 0.92);", worst) + cells);
  }

  // 4. Maximal violation on the singlet.
  {
    const SpaceLayout layout(16);
    const DenseVector psi = initial_vector(InitialState::PhiMinus0, layout);
    const double b = chsh_value(DensityState::pure(psi).rho, layout);
    const double err = std::abs(b - 2.0 * std::sqrt(2.0));
    report(4, "maximal-violation anchor", err < 1e-10,
           fmt("CHSH(singlet, 0 photons) = %.15f, |B - 2 sqrt 2| = %.2e (< 1e-10)", b, err));
  }

  // 5. Validity ratio at the reference point.
  {
    const double r = validity_ratio(SystemParams::reference());
    const double err = std::abs(r - 0.0210526315789474);
    report(5, "validity diagnostic", err < 1e-6,
           fmt("ratio %.10f, |r - 0.0210526| = %.2e (< 1e-6)", r, err));
  }

  // 6. Analytic oracles.
  {
    const OracleReport oracles = oracle_suite(cfg.dt);
    bool ok = true;
    std::string detail;
    for (const char* name : {"t1_decay", "cavity_decay", "rabi"}) {
      bool found = false;
      for (const auto& e : oracles.entries) {
        if (e.name != name) continue;
        found = true;
        ok = ok && e.error < 1e-3;
        detail += " " + e.name + fmt("=%.2e", e.error);
      }
      ok = ok && found;
    }
    report(6, "analytic oracles", ok, "relative errors (< 1e-3):" + detail);
  }

  // 7. Invariants through the reference run and step-size convergence.
  {
    const InvariantStats& s = base.invariants;
    EvolutionConfig half = cfg;
    half.dt = cfg.dt / 2;
    half.record_every = cfg.record_every * 2;
    const TimeSeries fine = run_time_series(ref, half, InitialState::GG0);
    const double df = std::abs(fine.steady.fidelity_mean - f_base);
    const bool ok = s.max_trace_deviation < 1e-8 && s.max_hermiticity_deviation < 1e-10 &&
                    s.min_eigenvalue > -1e-7 && df < 1e-4;
    report(7, "invariant suite", ok,
           fmt("max |tr-1| %.2e (< 1e-8), max herm dev %.2e (< 1e-10), min eig %.2e (> -1e-7)",
               s.max_trace_deviation, s.max_hermiticity_deviation, s.min_eigenvalue) +
               fmt(", |F(dt) - F(dt/2)| = %.2e (< 1e-4)", df));
  }

  // 8. Ablations: no pump, other initial states.
  {
    SystemParams no_pump = ref;
    no_pump.omega_nbar = 0.0;
    const double f_off = run_time_series(no_pump, cfg, InitialState::GG0).steady.fidelity_mean;
    const double f_ee = run_time_series(ref, cfg, InitialState::EE0).steady.fidelity_mean;
    const double f_plus = run_time_series(ref, cfg, InitialState::PhiPlus0).steady.fidelity_mean;
    const bool ok = f_off < 0.6 && std::abs(f_ee - f_base) < 0.01 &&
                    std::abs(f_plus - f_base) < 0.01;
    report(8, "protocol ablations", ok,
           fmt("F(no pump) %.5f (< 0.6), |F(ee0) - F(gg0)| %.2e, ", f_off,
               std::abs(f_ee - f_base)) +
               fmt("|F(phi+0) - F(gg0)| %.2e (each < 0.01)", std::abs(f_plus - f_base)));
  }

  // 9. Cavity truncation convergence.
  {
    const double f20 =
        run_time_series(reference_with_ncav(20), cfg, InitialState::GG0).steady.fidelity_mean;
    const double d = std::abs(f_base - f20);
    report(9, "truncation convergence", d < 0.003,
           fmt("F(16) %.6f, F(20) %.6f, difference %.2e (< 0.003)", f_base, f20, d));
  }

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  std::printf("%d of 9 criteria failed (%.0f s)\n", failures, secs);
  return failures == 0 ? 0 : 1;
}
