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

#include "observables.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace bellstab {

namespace {

constexpr SlotSet kQubits{true, true, false};

const Operator& singlet_projector() {
  static const Operator p(bell_state(BellSign::Minus).projector());
  return p;
}

const Operator& chsh_cached() {
  static const Operator o = chsh_operator();
  return o;
}

}  // namespace

StateVector bell_state(BellSign sign) {
  const double s = 1.0 / std::numbers::sqrt2;
  DenseVector v = DenseVector::Zero(4);
  v(1) = s;
  v(2) = sign == BellSign::Minus ? -s : s;
  return StateVector(std::move(v));
}

Operator chsh_operator() {
  const Operator sx = pauli(Pauli::X);
  const Operator sy = pauli(Pauli::Y);
  const Complex r(1.0 / std::numbers::sqrt2, 0.0);
  const Operator b1 = (Operator::zero(2) - sy - sx) * r;
  const Operator b2 = (sy - sx) * r;
  return kron(sy, b1) + kron(sx, b1) + kron(sx, b2) - kron(sy, b2);
}

Operator chsh_operator_compact() {
  const Operator sx = pauli(Pauli::X);
  const Operator sy = pauli(Pauli::Y);
  return (kron(sx, sx) + kron(sy, sy)) * Complex(-std::numbers::sqrt2, 0.0);
}

double fidelity(const DenseMatrix& rho, const SpaceLayout& layout) {
  const double f = expectation_real(singlet_projector(), partial_trace(rho, layout, kQubits));
  if (f < -1e-9 || f > 1.0 + 1e-9) {
    std::ostringstream msg;
    msg << "fidelity: value " << f << " outside [0, 1]; density matrix is invalid";
    throw std::runtime_error(msg.str());
  }
  return f;
}

double chsh_value(const DenseMatrix& rho, const SpaceLayout& layout) {
  const double b = expectation_real(chsh_cached(), partial_trace(rho, layout, kQubits));
  if (std::abs(b) > kTsirelsonBound + 1e-6) {
    std::ostringstream msg;
    msg << "chsh_value: value " << b << " exceeds 2 sqrt(2); density matrix is invalid";
    throw std::runtime_error(msg.str());
  }
  return b;
}

ObservableRecord diagnostics(const DenseMatrix& rho, const SpaceLayout& layout) {
  if (rho.rows() != layout.dim()) throw DimensionError("diagnostics: dimension mismatch");
  ObservableRecord rec;
  for (int qa = 0; qa < 2; ++qa) {
    for (int qb = 0; qb < 2; ++qb) {
      double pop = 0.0;
      for (int n = 0; n < layout.ncav(); ++n) {
        const Eigen::Index i = layout.index(qa, qb, n);
        const double p = rho(i, i).real();
        pop += p;
        rec.photon_number += n * p;
      }
      if (qa == 0 && qb == 0) {
        rec.p_gg = pop;
      } else if (qa == 1 && qb == 1) {
        rec.p_ee = pop;
      } else {
        rec.p_odd += pop;
      }
    }
  }
  return rec;
}

ObservableRecord observe(const DensityState& state, const SpaceLayout& layout) {
  ObservableRecord rec = diagnostics(state.rho, layout);
  rec.t = state.t;
  rec.fidelity = fidelity(state.rho, layout);
  rec.chsh = chsh_value(state.rho, layout);
  return rec;
}

}  // namespace bellstab
