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

#include "operator_algebra.hpp"

namespace bellstab {

enum class BellSign { Minus, Plus };

/// (|ge> -+ |eg>)/sqrt(2) in the two-qubit basis gg, ge, eg, ee.
StateVector bell_state(BellSign sign);

/// Four-term CHSH correlation operator with fixed measurement axes:
///
///   sy^A (-sy^B - sx^B)/sqrt2 + sx^A (-sy^B - sx^B)/sqrt2
///   + sx^A (sy^B - sx^B)/sqrt2 - sy^A (sy^B - sx^B)/sqrt2
Operator chsh_operator();

/// Collected form, -sqrt(2) (sx sx + sy sy).
Operator chsh_operator_compact();

inline constexpr double kTsirelsonBound = 2.8284271247461903;  // 2 sqrt(2)

/// tr((|phi_-><phi_-| (x) I_c) rho). Throws std::runtime_error when the
/// value leaves [0, 1] by more than 1e-9.
double fidelity(const DenseMatrix& rho, const SpaceLayout& layout);

/// tr((O_CHSH (x) I_c) rho). Throws std::runtime_error when |B| exceeds
/// 2 sqrt(2) by more than 1e-6.
double chsh_value(const DenseMatrix& rho, const SpaceLayout& layout);

struct ObservableRecord {
  double t = 0.0;
  double fidelity = 0.0;
  double chsh = 0.0;
  double photon_number = 0.0;
  double p_gg = 0.0;
  double p_ee = 0.0;
  double p_odd = 0.0;
};

/// Photon number and qubit parity populations; fidelity and chsh are left
/// at zero.
ObservableRecord diagnostics(const DenseMatrix& rho, const SpaceLayout& layout);

/// All observables of a full-space state.
ObservableRecord observe(const DensityState& state, const SpaceLayout& layout);

}  // namespace bellstab
