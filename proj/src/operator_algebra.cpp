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

#include "operator_algebra.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace bellstab {

namespace {

void require_same_dim(Eigen::Index lhs, Eigen::Index rhs, const char* what) {
  if (lhs != rhs) {
    throw DimensionError(std::string(what) + ": dimension mismatch (" + std::to_string(lhs) +
                         " vs " + std::to_string(rhs) + ")");
  }
}

}  // namespace

Operator::Operator(DenseMatrix dense) : dense_(std::move(dense)) {
  if (dense_.rows() != dense_.cols()) {
    throw DimensionError("Operator: matrix must be square");
  }
  // Column-major scan keeps the coordinate list in a fixed, reproducible order.
  for (Eigen::Index c = 0; c < dense_.cols(); ++c) {
    for (Eigen::Index r = 0; r < dense_.rows(); ++r) {
      const Complex v = dense_(r, c);
      if (v != Complex(0.0, 0.0)) nonzeros_.push_back({r, c, v});
    }
  }
}

Operator Operator::identity(Eigen::Index dim) {
  return Operator(DenseMatrix::Identity(dim, dim));
}

Operator Operator::zero(Eigen::Index dim) { return Operator(DenseMatrix::Zero(dim, dim)); }

Operator Operator::from_nonzeros(Eigen::Index dim, const std::vector<Nonzero>& entries) {
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= dim || e.col < 0 || e.col >= dim) {
      throw DimensionError("Operator::from_nonzeros: coordinate out of range");
    }
    m(e.row, e.col) += e.value;
  }
  return Operator(std::move(m));
}

bool Operator::is_diagonal() const {
  for (const auto& e : nonzeros_) {
    if (e.row != e.col) return false;
  }
  return true;
}

Operator Operator::adjoint() const { return Operator(DenseMatrix(dense_.adjoint())); }

bool Operator::is_hermitian(double tol) const {
  return (dense_ - dense_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

Operator Operator::operator+(const Operator& other) const {
  require_same_dim(dim(), other.dim(), "Operator::operator+");
  return Operator(DenseMatrix(dense_ + other.dense_));
}

Operator Operator::operator-(const Operator& other) const {
  require_same_dim(dim(), other.dim(), "Operator::operator-");
  return Operator(DenseMatrix(dense_ - other.dense_));
}

Operator Operator::operator*(const Operator& other) const {
  require_same_dim(dim(), other.dim(), "Operator::operator*");
  return Operator(DenseMatrix(dense_ * other.dense_));
}

Operator Operator::operator*(Complex scale) const { return Operator(DenseMatrix(dense_ * scale)); }

DenseVector Operator::operator*(const DenseVector& state) const {
  require_same_dim(dim(), state.size(), "Operator::apply");
  DenseVector out = DenseVector::Zero(dim());
  for (const auto& e : nonzeros_) out(e.row) += e.value * state(e.col);
  return out;
}

Operator pauli(Pauli kind) {
  const Complex i(0.0, 1.0);
  DenseMatrix plus = DenseMatrix::Zero(2, 2);
  plus(1, 0) = 1.0;
  DenseMatrix minus = plus.adjoint();
  switch (kind) {
    case Pauli::X:
      return Operator(DenseMatrix(plus + minus));
    case Pauli::Y:
      return Operator(DenseMatrix(-i * plus + i * minus));
    case Pauli::Z: {
      DenseMatrix z = DenseMatrix::Zero(2, 2);
      z(0, 0) = -1.0;
      z(1, 1) = 1.0;
      return Operator(std::move(z));
    }
    case Pauli::Plus:
      return Operator(std::move(plus));
    case Pauli::Minus:
      return Operator(std::move(minus));
  }
  throw std::invalid_argument("pauli: unknown kind");
}

Operator annihilation(int ncav) {
  if (ncav < 2) {
    throw std::invalid_argument("annihilation: cavity truncation must be at least 2, got " +
                                std::to_string(ncav));
  }
  DenseMatrix a = DenseMatrix::Zero(ncav, ncav);
  for (int n = 1; n < ncav; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(a));
}

Operator kron(const Operator& lhs, const Operator& rhs) {
  const Eigen::Index dl = lhs.dim();
  const Eigen::Index dr = rhs.dim();
  DenseMatrix out = DenseMatrix::Zero(dl * dr, dl * dr);
  for (const auto& a : lhs.nonzeros()) {
    for (const auto& b : rhs.nonzeros()) {
      out(a.row * dr + b.row, a.col * dr + b.col) = a.value * b.value;
    }
  }
  return Operator(std::move(out));
}

DenseVector kron(const DenseVector& lhs, const DenseVector& rhs) {
  DenseVector out(lhs.size() * rhs.size());
  for (Eigen::Index i = 0; i < lhs.size(); ++i) {
    out.segment(i * rhs.size(), rhs.size()) = lhs(i) * rhs;
  }
  return out;
}

SpaceLayout::SpaceLayout(int ncav) : ncav_(ncav) {
  if (ncav < 2) {
    throw std::invalid_argument("SpaceLayout: cavity truncation must be at least 2");
  }
}

Eigen::Index SpaceLayout::index(int qa, int qb, int n) const {
  return (static_cast<Eigen::Index>(qa) * 2 + qb) * ncav_ + n;
}

Operator lift(const Operator& op, Slot slot, const SpaceLayout& layout) {
  require_same_dim(op.dim(), layout.slot_dim(slot), "lift");
  const Operator i2 = Operator::identity(2);
  const Operator ic = Operator::identity(layout.ncav());
  switch (slot) {
    case Slot::A:
      return kron(kron(op, i2), ic);
    case Slot::B:
      return kron(kron(i2, op), ic);
    case Slot::Cavity:
      return kron(kron(i2, i2), op);
  }
  throw std::invalid_argument("lift: unknown slot");
}

StateVector::StateVector(DenseVector amplitudes) : amplitudes_(std::move(amplitudes)) {
  if (std::abs(amplitudes_.squaredNorm() - 1.0) > 1e-12) {
    throw std::invalid_argument("StateVector: amplitudes are not normalized");
  }
}

DenseVector basis_vector(Eigen::Index dim, Eigen::Index k) {
  if (k < 0 || k >= dim) throw DimensionError("basis_vector: index out of range");
  DenseVector v = DenseVector::Zero(dim);
  v(k) = 1.0;
  return v;
}

DenseVector coherent_state(int ncav, Complex alpha) {
  if (ncav < 1) throw std::invalid_argument("coherent_state: ncav must be positive");
  DenseVector v(ncav);
  // Recurrence c_n = c_{n-1} * alpha / sqrt(n) avoids factorial overflow.
  Complex c = std::exp(-0.5 * std::norm(alpha));
  v(0) = c;
  for (int n = 1; n < ncav; ++n) {
    c *= alpha / std::sqrt(static_cast<double>(n));
    v(n) = c;
  }
  v.normalize();
  return v;
}

DensityState DensityState::pure(const DenseVector& psi, double t) {
  return DensityState{psi * psi.adjoint(), t};
}

double DensityState::trace_deviation() const { return std::abs(rho.trace() - Complex(1.0, 0.0)); }

double DensityState::hermiticity_deviation() const {
  return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
}

double DensityState::min_eigenvalue() const {
  const DenseMatrix herm = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(herm, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

Complex expectation(const Operator& op, const DenseMatrix& rho) {
  require_same_dim(op.dim(), rho.rows(), "expectation");
  Complex acc(0.0, 0.0);
  for (const auto& e : op.nonzeros()) acc += e.value * rho(e.col, e.row);
  return acc;
}

double expectation_real(const Operator& op, const DenseMatrix& rho) {
  const Complex v = expectation(op, rho);
  if (std::abs(v.imag()) >= 1e-10) {
    throw std::runtime_error("expectation: imaginary part " + std::to_string(v.imag()) +
                             " for a Hermitian observable; state is corrupted");
  }
  return v.real();
}

DenseMatrix partial_trace(const DenseMatrix& rho, const SpaceLayout& layout, SlotSet keep) {
  require_same_dim(rho.rows(), layout.dim(), "partial_trace");
  const std::array<int, 3> dims{2, 2, layout.ncav()};
  Eigen::Index kept_dim = 1;
  for (int s = 0; s < 3; ++s) {
    if (keep[s]) kept_dim *= dims[s];
  }
  // Maps a full multi-index onto (kept index, traced index).
  auto split = [&](const std::array<int, 3>& idx) {
    Eigen::Index k = 0;
    Eigen::Index r = 0;
    for (int s = 0; s < 3; ++s) {
      if (keep[s]) {
        k = k * dims[s] + idx[s];
      } else {
        r = r * dims[s] + idx[s];
      }
    }
    return std::pair{k, r};
  };

  DenseMatrix out = DenseMatrix::Zero(kept_dim, kept_dim);
  std::vector<std::pair<Eigen::Index, Eigen::Index>> parts(layout.dim());
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int n = 0; n < layout.ncav(); ++n) {
        parts[layout.index(a, b, n)] = split({a, b, n});
      }
    }
  }
  for (Eigen::Index j = 0; j < rho.cols(); ++j) {
    for (Eigen::Index i = 0; i < rho.rows(); ++i) {
      if (parts[i].second == parts[j].second) out(parts[i].first, parts[j].first) += rho(i, j);
    }
  }
  return out;
}

}  // namespace bellstab
