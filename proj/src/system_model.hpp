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

#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "operator_algebra.hpp"

namespace bellstab {

/// Frequencies are angular rates in rad/us, times are in us.
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double mhz_to_rad_per_us(double mhz) { return mhz * kTwoPi; }
inline constexpr double rad_per_us_to_mhz(double w) { return w / kTwoPi; }

/// Thrown when a parameter set violates a physical or numerical invariant.
/// The message names the violated invariant.
class InvalidParams : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Minimum cavity truncation that holds a coherent state of mean `nbar`:
/// ceil(nbar + 5 sqrt(nbar)).
int min_ncav(double nbar);

/// Default truncation, min_ncav(nbar) + 2.
int default_ncav(double nbar);

struct SystemParams {
  double chi_a = mhz_to_rad_per_us(10.0);
  double chi_b = mhz_to_rad_per_us(9.5);
  double kappa = mhz_to_rad_per_us(2.0);
  // Infinite times switch the corresponding channel off.
  double t1_a = 50.0;
  double t1_b = 50.0;
  double t2_a = 50.0;
  double t2_b = 50.0;
  double nbar = 4.0;
  double omega0 = mhz_to_rad_per_us(1.0);
  double omega_nbar = mhz_to_rad_per_us(2.0);
  /// Cavity drive amplitude; when unset, (kappa/2) sqrt(nbar).
  std::optional<double> epsilon_c;
  /// Cavity truncation; 0 selects default_ncav(nbar).
  int ncav = 0;

  /// Operating point of the reference run: chi/2pi = 10 and 9.5 MHz,
  /// kappa/2pi = 2 MHz, T1 = T2 = 50 us, nbar = 4, Omega0 = kappa/2,
  /// Omega_nbar = kappa.
  static SystemParams reference();

  double cavity_drive() const;
  int resolved_ncav() const;

  /// Throws InvalidParams naming the first violated invariant. With
  /// `enforce_truncation_floor` false, only ncav >= 2 is required.
  void validate(bool enforce_truncation_floor = true) const;
};

struct DispersiveShift {
  double chi;
  /// |g/delta| > 0.1: the dispersive approximation is degrading.
  bool approximation_degraded;
};

/// chi = 2 g^2 / delta. Throws std::invalid_argument for delta == 0.
DispersiveShift dispersive_shift(double g, double delta);

/// (kappa/2) sqrt(nbar). Throws std::invalid_argument for negative nbar.
double epsilon_c_default(double kappa, double nbar);

/// r = |chi_A - chi_B| kappa sqrt(nbar) / (chi_A chi_B). The protocol needs
/// r << 1.
double validity_ratio(const SystemParams& params);

struct RegimeCheck {
  std::string name;
  std::string relation;  // e.g. "chi_A/kappa > 1"
  double value;
  double threshold;
  bool passed;
};

/// Factor used to read "much greater than" in the regime checks.
inline constexpr double kMuchGreaterFactor = 4.0;
inline constexpr double kValidityWarnThreshold = 0.1;

/// Validity ratio and the strong-dispersive regime inequalities, evaluated
/// without simulating.
std::vector<RegimeCheck> regime_checks(const SystemParams& params);

struct CollapseChannel {
  std::string name;
  double rate;
  Operator op;
};

/// Pure dephasing rate 1/T_phi = 1/T2 - 1/(2 T1).
double pure_dephasing_rate(double t1, double t2);

/// kappa D[a], (1/T1) D[sigma_-], (1/2T_phi) D[sigma_z] per qubit, in that
/// order, lifted to the full space. Always five entries.
std::vector<CollapseChannel> collapse_channels(const SystemParams& params,
                                               const SpaceLayout& layout);

/// The rotating-frame Hamiltonian split into time-independent operator
/// blocks with scalar time-dependent coefficients:
///
///   H(t) = static + 2 eps_c cos(w t) (a + a^dag)
///        + Omega_nbar (e^{-i nbar w t} P + e^{+i nbar w t} P^dag)
///
/// with w = (chi_A + chi_B)/2, P = sigma_+^A - sigma_+^B and
/// static = (chi_A sz^A/2 + chi_B sz^B/2) a^dag a + Omega0 (sx^A + sx^B).
class DrivenHamiltonian {
 public:
  DrivenHamiltonian(const SystemParams& params, const SpaceLayout& layout);

  struct Coefficients {
    double cavity;         // multiplies (a + a^dag)
    Complex pump;          // multiplies P
    Complex pump_adjoint;  // multiplies P^dag
  };

  Coefficients coefficients(double t) const;
  Operator at(double t) const;

  const Operator& static_part() const { return static_part_; }
  const Operator& cavity_drive() const { return cavity_drive_; }
  const Operator& pump() const { return pump_; }
  const Operator& pump_adjoint() const { return pump_adjoint_; }

 private:
  double drive_frequency_;
  double cavity_amplitude_;
  double pump_amplitude_;
  double nbar_;
  Operator static_part_;
  Operator cavity_drive_;
  Operator pump_;
  Operator pump_adjoint_;
};

/// Convenience wrapper building H(t) from scratch.
Operator build_hamiltonian(const SystemParams& params, double t);

}  // namespace bellstab
