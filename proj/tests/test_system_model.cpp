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

#include <cmath>
#include <limits>
#include <numbers>

#include "doctest.h"
#include "reference.hpp"
#include "system_model.hpp"

using namespace bellstab;
using testing::flat;
using testing::max_abs;

namespace {

// H(t) assembled entry by entry from the displayed matrix elements.
DenseMatrix hamiltonian_by_elements(const SystemParams& p, int ncav, double t) {
  const double w = 0.5 * (p.chi_a + p.chi_b);
  const double eps = p.epsilon_c ? *p.epsilon_c : 0.5 * p.kappa * std::sqrt(p.nbar);
  const Complex pump = p.omega_nbar * std::exp(Complex(0, -p.nbar * w * t));
  const int d = 4 * ncav;
  DenseMatrix h = DenseMatrix::Zero(d, d);
  for (int qa = 0; qa < 2; ++qa) {
    for (int qb = 0; qb < 2; ++qb) {
      const double sa = qa ? 1.0 : -1.0;
      const double sb = qb ? 1.0 : -1.0;
      for (int n = 0; n < ncav; ++n) {
        const auto k = flat(qa, qb, n, ncav);
        h(k, k) += (0.5 * p.chi_a * sa + 0.5 * p.chi_b * sb) * n;
        if (n + 1 < ncav) {
          const auto up = flat(qa, qb, n + 1, ncav);
          h(up, k) += 2.0 * eps * std::cos(w * t) * std::sqrt(n + 1.0);
          h(k, up) += 2.0 * eps * std::cos(w * t) * std::sqrt(n + 1.0);
        }
        h(flat(1 - qa, qb, n, ncav), k) += p.omega0;
        h(flat(qa, 1 - qb, n, ncav), k) += p.omega0;
        if (qa == 0) {
          h(flat(1, qb, n, ncav), k) += pump;
          h(k, flat(1, qb, n, ncav)) += std::conj(pump);
        }
        if (qb == 0) {
          h(flat(qa, 1, n, ncav), k) -= pump;
          h(k, flat(qa, 1, n, ncav)) -= std::conj(pump);
        }
      }
    }
  }
  return h;
}

}  // namespace

TEST_CASE("reference parameters") {
  const SystemParams p = SystemParams::reference();
  CHECK(p.chi_a == doctest::Approx(2 * std::numbers::pi * 10.0));
  CHECK(p.chi_b == doctest::Approx(2 * std::numbers::pi * 9.5));
  CHECK(p.kappa == doctest::Approx(2 * std::numbers::pi * 2.0));
  CHECK(p.t1_a == 50.0);
  CHECK(p.t2_b == 50.0);
  CHECK(p.nbar == 4.0);
  CHECK(p.omega0 == doctest::Approx(0.5 * p.kappa));
  CHECK(p.omega_nbar == doctest::Approx(p.kappa));
  CHECK(p.resolved_ncav() == 16);
  CHECK(min_ncav(4.0) == 14);
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("parameter validation names the violated invariant") {
  SystemParams p;
  p.t2_a = 200.0;
  CHECK_THROWS_WITH_AS(p.validate(), "invalid parameters: T2_A <= 2 T1_A", InvalidParams);
  p = SystemParams{};
  p.kappa = -1.0;
  CHECK_THROWS_WITH_AS(p.validate(), "invalid parameters: kappa > 0", InvalidParams);
  p = SystemParams{};
  p.ncav = 10;
  CHECK_THROWS_AS(p.validate(), InvalidParams);
  CHECK_NOTHROW(p.validate(false));
  p = SystemParams{};
  p.omega_nbar = 0.0;
  CHECK_NOTHROW(p.validate());
  p.t1_a = p.t2_a = std::numeric_limits<double>::infinity();
  CHECK_NOTHROW(p.validate());
}

TEST_CASE("dispersive shift") {
  const double two_pi = 2 * std::numbers::pi;
  const auto s = dispersive_shift(two_pi * 100, two_pi * 1000);
  CHECK(s.chi == doctest::Approx(two_pi * 20).epsilon(1e-14));
  CHECK_FALSE(s.approximation_degraded);
  CHECK(dispersive_shift(0.0, 5.0).chi == 0.0);
  CHECK(dispersive_shift(two_pi * 100, -two_pi * 1000).chi ==
        doctest::Approx(-two_pi * 20).epsilon(1e-14));
  CHECK(dispersive_shift(2.0, 10.0).approximation_degraded);
  CHECK_THROWS_AS(dispersive_shift(1.0, 0.0), std::invalid_argument);
}

TEST_CASE("cavity drive amplitude") {
  const double kappa = 2 * std::numbers::pi * 2.0;
  CHECK(epsilon_c_default(kappa, 4.0) == doctest::Approx(2 * std::numbers::pi * 2.0));
  CHECK(epsilon_c_default(kappa, 0.0) == 0.0);
  CHECK(epsilon_c_default(kappa, 1.0) == kappa / 2);
  CHECK_THROWS_AS(epsilon_c_default(kappa, -1.0), std::invalid_argument);
}

TEST_CASE("validity ratio") {
  SystemParams p;
  CHECK(validity_ratio(p) == doctest::Approx(0.5 * 2.0 * 2.0 / 95.0).epsilon(1e-14));
  p.chi_b = p.chi_a;
  CHECK(validity_ratio(p) == 0.0);
  p = SystemParams{};
  p.nbar = 1e-300;
  CHECK(validity_ratio(p) < 1e-150);

  SUBCASE("invariant under common rescaling of chi_A, chi_B and kappa") {
    const double r0 = validity_ratio(SystemParams{});
    for (double lambda : {0.1, 3.0, 17.5}) {
      SystemParams q;
      q.chi_a *= lambda;
      q.chi_b *= lambda;
      q.kappa *= lambda;
      CHECK(std::abs(validity_ratio(q) - r0) < 1e-15);
    }
  }
}

TEST_CASE("regime checks at the reference point all pass") {
  const auto checks = regime_checks(SystemParams{});
  CHECK(checks.size() == 7);
  for (const auto& c : checks) {
    INFO(c.name);
    CHECK(c.passed);
  }
  SystemParams p;
  p.chi_b = p.kappa * 0.5;
  bool flagged = false;
  for (const auto& c : regime_checks(p)) flagged |= (c.name == "chi_B_over_kappa" && !c.passed);
  CHECK(flagged);
}

TEST_CASE("collapse channels") {
  const SpaceLayout layout(4);
  SystemParams p;
  auto ch = collapse_channels(p, layout);
  REQUIRE(ch.size() == 5);
  CHECK(ch[0].rate == p.kappa);
  CHECK(ch[1].rate == 1.0 / 50.0);
  CHECK(ch[2].rate == 1.0 / 50.0);
  CHECK(ch[3].rate == doctest::Approx(1.0 / 200.0).epsilon(1e-14));
  CHECK(ch[4].rate == doctest::Approx(1.0 / 200.0).epsilon(1e-14));
  CHECK(ch[3].op.is_diagonal());
  for (const auto& c : ch) CHECK(c.op.dim() == layout.dim());

  p.t2_a = p.t2_b = 100.0;
  ch = collapse_channels(p, layout);
  CHECK(ch[3].rate == 0.0);
  CHECK(ch[4].rate == 0.0);

  p = SystemParams{};
  p.kappa = 0.0;
  ch = collapse_channels(p, layout);
  CHECK(ch.size() == 5);
  CHECK(ch[0].rate == 0.0);

  p = SystemParams{};
  p.t2_b = 101.0;
  CHECK_THROWS_AS(collapse_channels(p, layout), InvalidParams);
}

TEST_CASE("driven Hamiltonian") {
  SystemParams p;
  p.ncav = 6;
  const SpaceLayout layout(6);

  SUBCASE("matches the element-by-element construction") {
    for (double t : {0.0, 0.137, 1.0, 7.3}) {
      CHECK(max_abs(build_hamiltonian(p, t).dense() - hamiltonian_by_elements(p, 6, t)) < 1e-12);
    }
  }
  SUBCASE("Hermitian") {
    for (double t : {0.0, 0.137, 1.0}) {
      const DenseMatrix h = build_hamiltonian(p, t).dense();
      CHECK(max_abs(h - h.adjoint()) < 1e-14);
    }
  }
  SUBCASE("pure dispersive diagonal without drives") {
    SystemParams q = p;
    q.omega0 = q.omega_nbar = 0.0;
    q.epsilon_c = 0.0;
    const Operator h = build_hamiltonian(q, 0.0);
    CHECK(h.is_diagonal());
    for (int n = 0; n < 6; ++n) {
      const auto k = layout.index(0, 0, n);
      CHECK(std::abs(h.dense()(k, k) - Complex(-n * (q.chi_a + q.chi_b) / 2)) < 1e-12);
    }
  }
  SUBCASE("periodic with T = 4 pi / (chi_A + chi_B) for integer nbar") {
    const double period = 4 * std::numbers::pi / (p.chi_a + p.chi_b);
    for (double t : {0.0, 0.21, 3.0}) {
      CHECK(max_abs(build_hamiltonian(p, t).dense() - build_hamiltonian(p, t + period).dense()) <
            1e-11);
    }
  }
  SUBCASE("singlet is dark to the Bell-selection drive") {
    const double r = 1.0 / std::sqrt(2.0);
    const Operator sx = lift(pauli(Pauli::X), Slot::A, layout) + lift(pauli(Pauli::X), Slot::B, layout);
    for (int n : {0, 3}) {
      const DenseVector phi =
          r * (basis_vector(layout.dim(), layout.index(0, 1, n)) -
               basis_vector(layout.dim(), layout.index(1, 0, n)));
      CHECK(max_abs(sx * phi) == 0.0);
      CHECK(std::abs(phi.dot(sx * phi)) == 0.0);
    }
  }
  SUBCASE("pump couples gg,n to the singlet") {
    const DrivenHamiltonian h(p, layout);
    const double r = 1.0 / std::sqrt(2.0);
    for (int n : {0, 4}) {
      const DenseVector gg = basis_vector(layout.dim(), layout.index(0, 0, n));
      const DenseVector phi_minus = r * (basis_vector(layout.dim(), layout.index(0, 1, n)) -
                                         basis_vector(layout.dim(), layout.index(1, 0, n)));
      const DenseVector phi_plus = r * (basis_vector(layout.dim(), layout.index(0, 1, n)) +
                                        basis_vector(layout.dim(), layout.index(1, 0, n)));
      const DenseVector out = h.pump() * gg;
      CHECK(std::abs(phi_minus.dot(out) - Complex(-std::sqrt(2.0))) < 1e-15);
      CHECK(std::abs(phi_plus.dot(out)) < 1e-15);
    }
  }
}
