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

#include "doctest.h"
#include "observables.hpp"
#include "reference.hpp"

using namespace bellstab;
using testing::max_abs;
using testing::naive_kron;

namespace {

const Complex I{0.0, 1.0};

DenseMatrix sx() { return (DenseMatrix(2, 2) << 0, 1, 1, 0).finished(); }
DenseMatrix sy() { return (DenseMatrix(2, 2) << 0, I, -I, 0).finished(); }

// Product of a two-qubit state with the cavity Fock state |n>.
DenseMatrix with_fock(const DenseMatrix& qubits, int n, int ncav) {
  DenseMatrix fock = DenseMatrix::Zero(ncav, ncav);
  fock(n, n) = 1.0;
  return naive_kron(qubits, fock);
}

DenseMatrix projector(const DenseVector& v) { return v * v.adjoint(); }

}  // namespace

TEST_CASE("Bell states") {
  const DenseVector m = bell_state(BellSign::Minus).amplitudes();
  const DenseVector p = bell_state(BellSign::Plus).amplitudes();
  CHECK(std::abs(m.squaredNorm() - 1.0) < 1e-15);
  CHECK(std::abs(m.dot(p)) < 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  CHECK(max_abs(m - (DenseVector(4) << 0, r, -r, 0).finished()) == 0.0);
  CHECK(max_abs(p - (DenseVector(4) << 0, r, r, 0).finished()) == 0.0);
  CHECK(max_abs(naive_kron(sx(), sx()) * m + m) < 1e-15);
}

TEST_CASE("CHSH operator") {
  const double r = 1.0 / std::sqrt(2.0);
  const DenseMatrix four_terms =
      r * naive_kron(sy(), -sy() - sx()) + r * naive_kron(sx(), -sy() - sx()) +
      r * naive_kron(sx(), sy() - sx()) - r * naive_kron(sy(), sy() - sx());
  const DenseMatrix compact = -std::sqrt(2.0) * (naive_kron(sx(), sx()) + naive_kron(sy(), sy()));
  CHECK(max_abs(four_terms - compact) < 1e-15);
  CHECK(max_abs(chsh_operator().dense() - four_terms) < 1e-15);
  CHECK(max_abs(chsh_operator().dense() - chsh_operator_compact().dense()) < 1e-15);
  CHECK(chsh_operator().is_hermitian(0.0));

  const DenseVector m = bell_state(BellSign::Minus).amplitudes();
  CHECK(std::abs(m.dot(chsh_operator() * m) - kTsirelsonBound) < 1e-14);
  const DenseVector gg = basis_vector(4, 0);
  CHECK(std::abs(gg.dot(chsh_operator() * gg)) == 0.0);
}

TEST_CASE("fidelity and CHSH on reference states") {
  const int ncav = 4;
  const SpaceLayout layout(ncav);
  const DenseMatrix minus = projector(bell_state(BellSign::Minus).amplitudes());
  const DenseMatrix plus = projector(bell_state(BellSign::Plus).amplitudes());
  const DenseMatrix gg = projector(basis_vector(4, 0));
  const DenseMatrix mixed = DenseMatrix::Identity(4, 4) / 4.0;

  CHECK(fidelity(with_fock(minus, 0, ncav), layout) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(fidelity(with_fock(gg, 0, ncav), layout) == 0.0);
  CHECK(fidelity(with_fock(mixed, 0, ncav), layout) == doctest::Approx(0.25).epsilon(1e-15));

  CHECK(std::abs(chsh_value(with_fock(minus, 0, ncav), layout) - 2 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(chsh_value(with_fock(plus, 0, ncav), layout) + 2 * std::sqrt(2.0)) < 1e-10);
  CHECK(std::abs(chsh_value(with_fock(mixed, 0, ncav), layout)) < 1e-15);
  CHECK(std::abs(chsh_value(with_fock(minus, 3, ncav), layout) - kTsirelsonBound) < 1e-10);

  DenseMatrix bad = with_fock(minus, 0, ncav) * 1.1;
  CHECK_THROWS(fidelity(bad, layout));
  CHECK_THROWS_AS(fidelity(minus, layout), DimensionError);
}

TEST_CASE("Tsirelson bound holds over random states") {
  const SpaceLayout layout(3);
  for (unsigned seed = 1; seed <= 200; ++seed) {
    const DenseMatrix rho = testing::random_density(layout.dim(), seed);
    CHECK(std::abs(chsh_value(rho, layout)) <= kTsirelsonBound + 1e-9);
  }
  // Pure states reach the bound more closely than mixed ones.
  for (unsigned seed = 1; seed <= 50; ++seed) {
    const DenseMatrix g = testing::random_density(4, 1000 + seed);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(g);
    const DenseVector top = es.eigenvectors().col(3);
    CHECK(std::abs(chsh_value(with_fock(projector(top), 0, 3), layout)) <=
          kTsirelsonBound + 1e-9);
  }
}

TEST_CASE("observables are linear in the state") {
  const SpaceLayout layout(4);
  const DenseMatrix r1 = testing::random_density(layout.dim(), 31);
  const DenseMatrix r2 = testing::random_density(layout.dim(), 32);
  for (double lambda : {0.0, 0.3, 0.77, 1.0}) {
    const DenseMatrix mix = lambda * r1 + (1 - lambda) * r2;
    CHECK(std::abs(fidelity(mix, layout) -
                   (lambda * fidelity(r1, layout) + (1 - lambda) * fidelity(r2, layout))) < 1e-12);
    CHECK(std::abs(chsh_value(mix, layout) -
                   (lambda * chsh_value(r1, layout) + (1 - lambda) * chsh_value(r2, layout))) <
          1e-12);
  }
}

TEST_CASE("diagnostics") {
  const int ncav = 5;
  const SpaceLayout layout(ncav);
  const auto gg0 = diagnostics(with_fock(projector(basis_vector(4, 0)), 0, ncav), layout);
  CHECK(gg0.p_gg == 1.0);
  CHECK(gg0.photon_number == 0.0);
  CHECK(gg0.p_odd == 0.0);

  const auto s3 =
      diagnostics(with_fock(projector(bell_state(BellSign::Minus).amplitudes()), 3, ncav), layout);
  CHECK(s3.p_odd == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(s3.photon_number == doctest::Approx(3.0).epsilon(1e-14));

  for (unsigned seed = 1; seed <= 20; ++seed) {
    const auto d = diagnostics(testing::random_density(layout.dim(), seed), layout);
    CHECK(std::abs(d.p_gg + d.p_ee + d.p_odd - 1.0) < 1e-8);
    CHECK(d.photon_number >= 0.0);
    CHECK(std::abs(d.chsh) <= kTsirelsonBound + 1e-6);
  }

  const DensityState s{with_fock(projector(basis_vector(4, 3)), 2, ncav), 1.25};
  const auto rec = observe(s, layout);
  CHECK(rec.t == 1.25);
  CHECK(rec.p_ee == 1.0);
  CHECK(rec.photon_number == doctest::Approx(2.0));
}
