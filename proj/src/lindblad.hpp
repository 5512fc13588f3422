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

#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "operator_algebra.hpp"
#include "system_model.hpp"

namespace bellstab {

/// Reference right-hand side of the master equation (hbar = 1):
///
///   -i[H, rho] + sum_k rate_k (L rho L^dag - 1/2 L^dag L rho - 1/2 rho L^dag L)
///
/// Dense and allocation-heavy; used as an oracle for the fast generator.
DenseMatrix lindblad_rhs(const Operator& hamiltonian, std::span<const CollapseChannel> channels,
                         const DenseMatrix& rho);

/// Fast master-equation generator for H(t) = sum_k c_k(t) H_k.
///
/// The anti-Hermitian damping -i/2 sum rate L^dag L is folded into one
/// sparse matrix K(t) = H(t) - i/2 sum rate L^dag L whose sparsity pattern is
/// fixed at construction; only its values are refreshed per call. For
/// Hermitian rho the coherent part becomes i(W - W^dag) with W = rho K^dag,
/// built from contiguous column updates. Diagonal jump operators collapse
/// into one elementwise scale of rho; the remaining jump terms
/// L rho L^dag are applied from a flattened (target, source, weight) list.
///
/// apply() requires Hermitian rho and returns an exactly Hermitian matrix;
/// lindblad_rhs() handles general input. Not safe for concurrent apply()
/// calls on the same instance.
class LindbladGenerator {
 public:
  /// Writes the coefficients c_k(t) of the Hamiltonian terms.
  using CoefficientFn = std::function<void(double t, std::span<Complex> out)>;

  LindbladGenerator(std::vector<Operator> hamiltonian_terms, CoefficientFn coefficients,
                    std::vector<CollapseChannel> channels);

  /// Generator with a time-independent Hamiltonian.
  static LindbladGenerator constant(const Operator& hamiltonian,
                                    std::vector<CollapseChannel> channels);

  /// Generator for the driven protocol Hamiltonian.
  static LindbladGenerator driven(const DrivenHamiltonian& hamiltonian,
                                  std::vector<CollapseChannel> channels);

  Eigen::Index dim() const { return dim_; }
  std::span<const CollapseChannel> channels() const { return channels_; }

  /// out = L_t(rho).
  void apply(double t, const DenseMatrix& rho, DenseMatrix& out) const;
  DenseMatrix apply(double t, const DenseMatrix& rho) const;

  /// Dense H(t), for cross-checks.
  Operator hamiltonian(double t) const;

 private:
  struct Transfer {
    Eigen::Index target;  // column-major flat index into the output
    Eigen::Index source;  // column-major flat index into rho
    Complex weight;
  };

  Eigen::Index dim_;
  std::vector<Operator> terms_;
  CoefficientFn coefficients_;
  std::vector<CollapseChannel> channels_;

  // Union sparsity pattern of K(t).
  std::vector<Eigen::Index> pattern_rows_;
  std::vector<Eigen::Index> pattern_cols_;
  std::vector<Complex> damping_values_;
  std::vector<std::vector<Complex>> term_values_;

  DenseMatrix diagonal_jump_scale_;
  bool has_diagonal_jumps_ = false;
  std::vector<Transfer> transfers_;

  mutable std::vector<Complex> coefficient_scratch_;
  mutable std::vector<Complex> values_;
  mutable DenseMatrix coherent_;
  mutable DenseMatrix incoherent_;
};

struct EvolutionConfig {
  double dt = 0.0002;
  double t_final = 20.0;
  int record_every = 500;
  bool enforce_invariants = true;

  /// Throws std::invalid_argument unless dt > 0, t_final >= dt and
  /// record_every >= 1.
  void validate() const;
  std::int64_t steps() const;
};

inline constexpr double kTraceTolerance = 1e-8;
inline constexpr double kTraceAbortTolerance = 1e-6;
inline constexpr double kHermiticityTolerance = 1e-10;
inline constexpr double kPositivityTolerance = -1e-7;

/// Worst-case invariant values seen at recorded samples.
struct InvariantStats {
  double max_trace_deviation = 0.0;
  double max_hermiticity_deviation = 0.0;
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  int renormalizations = 0;
  int samples = 0;
};

/// Raised when the state becomes non-finite or an invariant is broken beyond
/// tolerance. Carries the last state that passed every check.
class EvolutionAborted : public std::runtime_error {
 public:
  EvolutionAborted(const std::string& what, DensityState last_good)
      : std::runtime_error(what), last_good_(std::move(last_good)) {}
  const DensityState& last_good() const { return last_good_; }

 private:
  DensityState last_good_;
};

/// Scratch buffers for one RK4 stepper.
struct Rk4Workspace {
  DenseMatrix k1, k2, k3, k4, stage;
};

/// Classical RK4 update with the generator evaluated at t, t + dt/2 and
/// t + dt. Throws EvolutionAborted if the result is not finite.
void rk4_step(DensityState& state, double dt, const LindbladGenerator& generator,
              Rk4Workspace& workspace);
DensityState rk4_step(const DensityState& state, double dt, const LindbladGenerator& generator);

struct IntegrationResult {
  DensityState final_state;
  InvariantStats stats;
};

using SampleObserver = std::function<void(const DensityState&)>;

/// Steps from initial.t over config.steps() steps, calling `on_sample` at
/// step 0 and every config.record_every steps.
///
/// Trace deviation is checked after every step: within (1e-8, 1e-6] the
/// state is divided by its trace, above 1e-6 the run aborts. Hermiticity
/// and the minimum eigenvalue are checked at samples and abort the run when
/// config.enforce_invariants is set.
IntegrationResult integrate(DensityState initial, const LindbladGenerator& generator,
                            const EvolutionConfig& config, const SampleObserver& on_sample = {});

}  // namespace bellstab
