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

#include "system_model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace bellstab {

namespace {

void require(bool ok, const std::string& invariant) {
  if (!ok) throw InvalidParams("invalid parameters: " + invariant);
}

bool positive(double x) { return x > 0.0 && !std::isnan(x); }

}  // namespace

int min_ncav(double nbar) {
  if (nbar < 0.0) throw std::invalid_argument("min_ncav: nbar must be non-negative");
  return static_cast<int>(std::ceil(nbar + 5.0 * std::sqrt(nbar)));
}

int default_ncav(double nbar) { return std::max(min_ncav(nbar) + 2, 2); }

SystemParams SystemParams::reference() { return SystemParams{}; }

double SystemParams::cavity_drive() const {
  return epsilon_c ? *epsilon_c : epsilon_c_default(kappa, nbar);
}

int SystemParams::resolved_ncav() const { return ncav > 0 ? ncav : default_ncav(nbar); }

void SystemParams::validate(bool enforce_truncation_floor) const {
  require(positive(chi_a) && std::isfinite(chi_a), "chi_A > 0");
  require(positive(chi_b) && std::isfinite(chi_b), "chi_B > 0");
  require(positive(kappa) && std::isfinite(kappa), "kappa > 0");
  require(positive(t1_a), "T1_A > 0");
  require(positive(t1_b), "T1_B > 0");
  require(positive(t2_a), "T2_A > 0");
  require(positive(t2_b), "T2_B > 0");
  require(t2_a <= 2.0 * t1_a, "T2_A <= 2 T1_A");
  require(t2_b <= 2.0 * t1_b, "T2_B <= 2 T1_B");
  require(nbar >= 0.0 && std::isfinite(nbar), "nbar >= 0");
  require(omega0 >= 0.0 && std::isfinite(omega0), "Omega0 >= 0");
  require(omega_nbar >= 0.0 && std::isfinite(omega_nbar), "Omega_nbar >= 0");
  if (epsilon_c) require(*epsilon_c >= 0.0 && std::isfinite(*epsilon_c), "epsilon_c >= 0");
  require(ncav == 0 || ncav >= 2, "N_cav >= 2");
  if (enforce_truncation_floor) {
    require(resolved_ncav() >= min_ncav(nbar),
            "N_cav >= ceil(nbar + 5 sqrt(nbar)) = " + std::to_string(min_ncav(nbar)));
  }
}

DispersiveShift dispersive_shift(double g, double delta) {
  if (delta == 0.0) throw std::invalid_argument("dispersive_shift: detuning must be nonzero");
  return {2.0 * g * g / delta, std::abs(g / delta) > 0.1};
}

double epsilon_c_default(double kappa, double nbar) {
  if (nbar < 0.0) throw std::invalid_argument("epsilon_c_default: nbar must be non-negative");
  return 0.5 * kappa * std::sqrt(nbar);
}

double validity_ratio(const SystemParams& params) {
  const double denom = params.chi_a * params.chi_b;
  if (denom == 0.0) throw std::invalid_argument("validity_ratio: chi_A chi_B is zero");
  return std::abs(params.chi_a - params.chi_b) * params.kappa * std::sqrt(params.nbar) / denom;
}

std::vector<RegimeCheck> regime_checks(const SystemParams& params) {
  std::vector<RegimeCheck> out;
  auto at_least = [&](std::string name, std::string relation, double value, double threshold) {
    out.push_back({std::move(name), std::move(relation), value, threshold, value >= threshold});
  };
  const double r = validity_ratio(params);
  out.push_back({"validity_ratio", "|chi_A-chi_B| kappa sqrt(nbar)/(chi_A chi_B) <= 0.1", r,
                 kValidityWarnThreshold, r <= kValidityWarnThreshold});

  const double chi_min = std::min(params.chi_a, params.chi_b);
  out.push_back({"chi_A_over_kappa", "chi_A/kappa > 1", params.chi_a / params.kappa, 1.0,
                 params.chi_a > params.kappa});
  out.push_back({"chi_B_over_kappa", "chi_B/kappa > 1", params.chi_b / params.kappa, 1.0,
                 params.chi_b > params.kappa});
  at_least("kappa_T2_A", "kappa T2_A >> 1", params.kappa * params.t2_a, kMuchGreaterFactor);
  at_least("kappa_T2_B", "kappa T2_B >> 1", params.kappa * params.t2_b, kMuchGreaterFactor);

  const double eps = params.cavity_drive();
  at_least("chi_over_epsilon_c", "min(chi)/epsilon_c >> 1",
           eps > 0.0 ? chi_min / eps : std::numeric_limits<double>::infinity(),
           kMuchGreaterFactor);
  at_least("nbar_chi_over_omega_nbar", "nbar min(chi)/Omega_nbar >> 1",
           params.omega_nbar > 0.0 ? params.nbar * chi_min / params.omega_nbar
                                   : std::numeric_limits<double>::infinity(),
           kMuchGreaterFactor);
  return out;
}

double pure_dephasing_rate(double t1, double t2) {
  if (!positive(t1) || !positive(t2)) {
    throw InvalidParams("invalid parameters: T1 > 0 and T2 > 0");
  }
  if (t2 > 2.0 * t1) throw InvalidParams("invalid parameters: T2 <= 2 T1");
  // Clamp rounding noise at the T2 = 2 T1 boundary.
  return std::max(1.0 / t2 - 0.5 / t1, 0.0);
}

std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const SpaceLayout& layout) {
  if (params.kappa < 0.0) throw InvalidParams("invalid parameters: kappa >= 0");
  const double phi_a = pure_dephasing_rate(params.t1_a, params.t2_a);
  const double phi_b = pure_dephasing_rate(params.t1_b, params.t2_b);
  const Operator sm = pauli(Pauli::Minus);
  const Operator sz = pauli(Pauli::Z);
  return {
      {"cavity_loss", params.kappa, lift(annihilation(layout.ncav()), Slot::Cavity, layout)},
      {"relaxation_A", 1.0 / params.t1_a, lift(sm, Slot::A, layout)},
      {"relaxation_B", 1.0 / params.t1_b, lift(sm, Slot::B, layout)},
      {"dephasing_A", 0.5 * phi_a, lift(sz, Slot::A, layout)},
      {"dephasing_B", 0.5 * phi_b, lift(sz, Slot::B, layout)},
  };
}

DrivenHamiltonian::DrivenHamiltonian(const SystemParams& params, const SpaceLayout& layout)
    : drive_frequency_(0.5 * (params.chi_a + params.chi_b)),
      cavity_amplitude_(2.0 * params.cavity_drive()),
      pump_amplitude_(params.omega_nbar),
      nbar_(params.nbar) {
  const Operator a = lift(annihilation(layout.ncav()), Slot::Cavity, layout);
  const Operator number = a.adjoint() * a;
  const Operator dispersive = (lift(pauli(Pauli::Z), Slot::A, layout) * (0.5 * params.chi_a) +
                               lift(pauli(Pauli::Z), Slot::B, layout) * (0.5 * params.chi_b)) *
                              number;
  const Operator rabi =
      (lift(pauli(Pauli::X), Slot::A, layout) + lift(pauli(Pauli::X), Slot::B, layout)) *
      params.omega0;
  static_part_ = dispersive + rabi;
  cavity_drive_ = a + a.adjoint();
  pump_ = lift(pauli(Pauli::Plus), Slot::A, layout) - lift(pauli(Pauli::Plus), Slot::B, layout);
  pump_adjoint_ = pump_.adjoint();
}

DrivenHamiltonian::Coefficients DrivenHamiltonian::coefficients(double t) const {
  const double w = drive_frequency_ * t;
  const Complex phase = std::polar(1.0, -nbar_ * w);
  return {cavity_amplitude_ * std::cos(w), pump_amplitude_ * phase,
          pump_amplitude_ * std::conj(phase)};
}

Operator DrivenHamiltonian::at(double t) const {
  const Coefficients c = coefficients(t);
  return static_part_ + cavity_drive_ * c.cavity + pump_ * c.pump + pump_adjoint_ * c.pump_adjoint;
}

Operator build_hamiltonian(const SystemParams& params, double t) {
  return DrivenHamiltonian(params, SpaceLayout(params.resolved_ncav())).at(t);
}

}  // namespace bellstab
