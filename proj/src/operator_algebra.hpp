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

#include <array>
#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace bellstab {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using DenseVector = Eigen::VectorXcd;

/// Raised when operands do not share the same Hilbert-space dimension.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// One nonzero element of a sparse operator.
struct Nonzero {
  Eigen::Index row;
  Eigen::Index col;
  Complex value;
};

/// Complex square matrix carried in two exactly-equal representations:
/// a dense matrix and the coordinate list of its nonzero elements.
///
/// Both views are produced by a single construction pass, so they agree
/// elementwise with no tolerance. Instances are immutable.
class Operator {
 public:
  Operator() = default;
  explicit Operator(DenseMatrix dense);

  static Operator identity(Eigen::Index dim);
  static Operator zero(Eigen::Index dim);
  static Operator from_nonzeros(Eigen::Index dim, const std::vector<Nonzero>& entries);

  Eigen::Index dim() const { return dense_.rows(); }
  const DenseMatrix& dense() const { return dense_; }
  const std::vector<Nonzero>& nonzeros() const { return nonzeros_; }
  bool is_diagonal() const;

  Operator adjoint() const;
  bool is_hermitian(double tol = 0.0) const;

  Operator operator+(const Operator& other) const;
  Operator operator-(const Operator& other) const;
  Operator operator*(const Operator& other) const;
  Operator operator*(Complex scale) const;
  DenseVector operator*(const DenseVector& state) const;

 private:
  DenseMatrix dense_;
  std::vector<Nonzero> nonzeros_;
};

inline Operator operator*(Complex scale, const Operator& op) { return op * scale; }

enum class Pauli { X, Y, Z, Plus, Minus };

/// Single-qubit operator in the (|g>, |e>) basis: sigma_z = diag(-1, +1),
/// sigma_+ = |e><g|.
Operator pauli(Pauli kind);

/// Truncated bosonic lowering operator a|n> = sqrt(n)|n-1>.
Operator annihilation(int ncav);

Operator kron(const Operator& lhs, const Operator& rhs);
DenseVector kron(const DenseVector& lhs, const DenseVector& rhs);

enum class Slot { A = 0, B = 1, Cavity = 2 };

/// Qubit A (x) qubit B (x) cavity, with A the slowest index and the cavity
/// the fastest. Qubit index 0 is |g>, index 1 is |e>; cavity index n is |n>.
class SpaceLayout {
 public:
  explicit SpaceLayout(int ncav);

  int ncav() const { return ncav_; }
  Eigen::Index dim() const { return 4 * static_cast<Eigen::Index>(ncav_); }
  int slot_dim(Slot slot) const { return slot == Slot::Cavity ? ncav_ : 2; }

  /// Flat index of |qa, qb, n>.
  Eigen::Index index(int qa, int qb, int n) const;

 private:
  int ncav_;
};

/// Embeds a single-subsystem operator into the full space with identities
/// on the other two slots.
Operator lift(const Operator& op, Slot slot, const SpaceLayout& layout);

/// Normalized pure state. The squared norm is 1 within 1e-12.
class StateVector {
 public:
  explicit StateVector(DenseVector amplitudes);

  Eigen::Index dim() const { return amplitudes_.size(); }
  const DenseVector& amplitudes() const { return amplitudes_; }
  DenseMatrix projector() const { return amplitudes_ * amplitudes_.adjoint(); }

 private:
  DenseVector amplitudes_;
};

/// Computational basis state |k> of dimension `dim`.
DenseVector basis_vector(Eigen::Index dim, Eigen::Index k);

/// Coherent state truncated to `ncav` levels and renormalized.
DenseVector coherent_state(int ncav, Complex alpha);

/// Density matrix together with its time stamp.
struct DensityState {
  DenseMatrix rho;
  double t = 0.0;

  static DensityState pure(const DenseVector& psi, double t = 0.0);

  double trace_deviation() const;
  double hermiticity_deviation() const;
  double min_eigenvalue() const;
};

/// tr(O rho).
Complex expectation(const Operator& op, const DenseMatrix& rho);

/// tr(O rho) for Hermitian O. Throws std::runtime_error when the imaginary
/// part exceeds 1e-10, which indicates a corrupted state.
double expectation_real(const Operator& op, const DenseMatrix& rho);

using SlotSet = std::array<bool, 3>;

/// Reduced density matrix over the kept slots, in layout order.
DenseMatrix partial_trace(const DenseMatrix& rho, const SpaceLayout& layout, SlotSet keep);

}  // namespace bellstab
