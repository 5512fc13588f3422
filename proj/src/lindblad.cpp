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

#include "lindblad.hpp"

#include <algorithm>
#include <map>
#include <cmath>
#include <sstream>

namespace bellstab {

DenseMatrix lindblad_rhs(const Operator& hamiltonian, std::span<const CollapseChannel> channels,
                         const DenseMatrix& rho) {
  const Complex i(0.0, 1.0);
  const DenseMatrix& h = hamiltonian.dense();
  if (h.rows() != rho.rows()) throw DimensionError("lindblad_rhs: dimension mismatch");
  DenseMatrix out = -i * (h * rho - rho * h);
  for (const auto& ch : channels) {
    const DenseMatrix& l = ch.op.dense();
    if (l.rows() != rho.rows()) throw DimensionError("lindblad_rhs: channel dimension mismatch");
    const DenseMatrix ldl = l.adjoint() * l;
    out += ch.rate * (l * rho * l.adjoint() - 0.5 * ldl * rho - 0.5 * rho * ldl);
  }
  return out;
}

LindbladGenerator::LindbladGenerator(std::vector<Operator> hamiltonian_terms,
                                     CoefficientFn coefficients,
                                     std::vector<CollapseChannel> channels)
    : dim_(0),
      terms_(std::move(hamiltonian_terms)),
      coefficients_(std::move(coefficients)),
      channels_(std::move(channels)) {
  if (terms_.empty()) throw std::invalid_argument("LindbladGenerator: no Hamiltonian terms");
  dim_ = terms_.front().dim();
  for (const auto& term : terms_) {
    if (term.dim() != dim_) throw DimensionError("LindbladGenerator: term dimension mismatch");
  }

  DenseMatrix damping = DenseMatrix::Zero(dim_, dim_);
  diagonal_jump_scale_ = DenseMatrix::Zero(dim_, dim_);
  std::map<std::pair<Eigen::Index, Eigen::Index>, Complex> transfers;
  for (const auto& ch : channels_) {
    if (ch.op.dim() != dim_) throw DimensionError("LindbladGenerator: channel dimension mismatch");
    if (ch.rate < 0.0) throw std::invalid_argument("LindbladGenerator: negative channel rate");
    if (ch.rate == 0.0) continue;
    const DenseMatrix& l = ch.op.dense();
    damping += Complex(0.0, -0.5 * ch.rate) * (l.adjoint() * l);
    if (ch.op.is_diagonal()) {
      const DenseVector d = l.diagonal();
      diagonal_jump_scale_ += ch.rate * (d * d.adjoint());
      has_diagonal_jumps_ = true;
      continue;
    }
    // (L rho L^dag)_{ij} += rate L_ik rho_kl conj(L_jl)
    for (const auto& right : ch.op.nonzeros()) {
      for (const auto& left : ch.op.nonzeros()) {
        const Eigen::Index target = left.row + right.row * dim_;
        const Eigen::Index source = left.col + right.col * dim_;
        transfers[{target, source}] += ch.rate * left.value * std::conj(right.value);
      }
    }
  }
  for (const auto& [key, w] : transfers) {
    if (w != Complex(0.0, 0.0)) transfers_.push_back({key.first, key.second, w});
  }

  // Union pattern, ordered by (row, col).
  std::map<std::pair<Eigen::Index, Eigen::Index>, std::size_t> slots;
  auto mark = [&](const Operator& op) {
    for (const auto& e : op.nonzeros()) slots.try_emplace({e.row, e.col}, 0);
  };
  const Operator damping_op(std::move(damping));
  for (const auto& term : terms_) mark(term);
  mark(damping_op);
  std::size_t next = 0;
  for (auto& [key, slot] : slots) {
    slot = next++;
    pattern_rows_.push_back(key.first);
    pattern_cols_.push_back(key.second);
  }
  auto scatter = [&](const Operator& op) {
    std::vector<Complex> values(slots.size(), Complex(0.0, 0.0));
    for (const auto& e : op.nonzeros()) values[slots.at({e.row, e.col})] = e.value;
    return values;
  };
  damping_values_ = scatter(damping_op);
  for (const auto& term : terms_) term_values_.push_back(scatter(term));
  coefficient_scratch_.assign(terms_.size(), Complex(0.0, 0.0));
  values_.assign(slots.size(), Complex(0.0, 0.0));
  coherent_ = DenseMatrix::Zero(dim_, dim_);
  incoherent_ = DenseMatrix::Zero(dim_, dim_);
}

LindbladGenerator LindbladGenerator::constant(const Operator& hamiltonian,
                                              std::vector<CollapseChannel> channels) {
  return LindbladGenerator(
      {hamiltonian}, [](double, std::span<Complex> c) { c[0] = 1.0; }, std::move(channels));
}

LindbladGenerator LindbladGenerator::driven(const DrivenHamiltonian& hamiltonian,
                                            std::vector<CollapseChannel> channels) {
  auto coefficients = [h = hamiltonian](double t, std::span<Complex> c) {
    const auto k = h.coefficients(t);
    c[0] = 1.0;
    c[1] = k.cavity;
    c[2] = k.pump;
    c[3] = k.pump_adjoint;
  };
  return LindbladGenerator({hamiltonian.static_part(), hamiltonian.cavity_drive(),
                            hamiltonian.pump(), hamiltonian.pump_adjoint()},
                           std::move(coefficients), std::move(channels));
}

void LindbladGenerator::apply(double t, const DenseMatrix& rho, DenseMatrix& out) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DimensionError("LindbladGenerator::apply: dimension mismatch");
  }
  coefficients_(t, coefficient_scratch_);
  const std::size_t nnz = values_.size();
  for (std::size_t p = 0; p < nnz; ++p) values_[p] = damping_values_[p];
  for (std::size_t k = 0; k < term_values_.size(); ++k) {
    const Complex c = coefficient_scratch_[k];
    if (c == Complex(0.0, 0.0)) continue;
    const auto& tv = term_values_[k];
    for (std::size_t p = 0; p < nnz; ++p) values_[p] += c * tv[p];
  }

  // W = rho K^dag, column i of W accumulates conj(K_ik) rho(:, k).
  coherent_.setZero();
  for (std::size_t p = 0; p < nnz; ++p) {
    coherent_.col(pattern_rows_[p]) += std::conj(values_[p]) * rho.col(pattern_cols_[p]);
  }

  if (has_diagonal_jumps_) {
    incoherent_.noalias() = diagonal_jump_scale_.cwiseProduct(rho);
  } else {
    incoherent_.setZero();
  }
  Complex* inc = incoherent_.data();
  const Complex* src = rho.data();
  for (const auto& tr : transfers_) inc[tr.target] += tr.weight * src[tr.source];

  // Both parts are Hermitian for Hermitian rho; the projection removes
  // rounding residue so that it cannot feed back into the state.
  out.resize(dim_, dim_);
  out.noalias() = Complex(0.0, 1.0) * (coherent_ - coherent_.adjoint()) +
                  0.5 * (incoherent_ + incoherent_.adjoint());
}

DenseMatrix LindbladGenerator::apply(double t, const DenseMatrix& rho) const {
  DenseMatrix out;
  apply(t, rho, out);
  return out;
}

Operator LindbladGenerator::hamiltonian(double t) const {
  coefficients_(t, coefficient_scratch_);
  DenseMatrix h = DenseMatrix::Zero(dim_, dim_);
  for (std::size_t k = 0; k < terms_.size(); ++k) h += coefficient_scratch_[k] * terms_[k].dense();
  return Operator(std::move(h));
}

void EvolutionConfig::validate() const {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("EvolutionConfig: dt must be positive");
  }
  if (!(t_final >= dt) || !std::isfinite(t_final)) {
    throw std::invalid_argument("EvolutionConfig: t_final must be at least dt");
  }
  if (record_every < 1) throw std::invalid_argument("EvolutionConfig: record_every must be >= 1");
}

std::int64_t EvolutionConfig::steps() const { return std::llround(t_final / dt); }

void rk4_step(DensityState& state, double dt, const LindbladGenerator& generator,
              Rk4Workspace& ws) {
  const double t = state.t;
  const DenseMatrix& rho = state.rho;
  generator.apply(t, rho, ws.k1);
  ws.stage.noalias() = rho + (0.5 * dt) * ws.k1;
  generator.apply(t + 0.5 * dt, ws.stage, ws.k2);
  ws.stage.noalias() = rho + (0.5 * dt) * ws.k2;
  generator.apply(t + 0.5 * dt, ws.stage, ws.k3);
  ws.stage.noalias() = rho + dt * ws.k3;
  generator.apply(t + dt, ws.stage, ws.k4);
  ws.stage.noalias() = rho + (dt / 6.0) * (ws.k1 + 2.0 * ws.k2 + 2.0 * ws.k3 + ws.k4);
  if (!ws.stage.allFinite()) {
    std::ostringstream msg;
    msg << "rk4_step: non-finite density matrix at t = " << t + dt;
    throw EvolutionAborted(msg.str(), state);
  }
  state.rho.swap(ws.stage);
  state.t = t + dt;
}

DensityState rk4_step(const DensityState& state, double dt, const LindbladGenerator& generator) {
  DensityState next = state;
  Rk4Workspace ws;
  rk4_step(next, dt, generator, ws);
  return next;
}

IntegrationResult integrate(DensityState initial, const LindbladGenerator& generator,
                            const EvolutionConfig& config, const SampleObserver& on_sample) {
  config.validate();
  if (initial.rho.rows() != generator.dim()) {
    throw DimensionError("integrate: initial state dimension does not match generator");
  }
  InvariantStats stats;
  DensityState state = std::move(initial);
  DensityState last_good = state;
  const double t0 = state.t;
  Rk4Workspace ws;

  auto sample = [&]() {
    const double trace_dev = state.trace_deviation();
    const double herm_dev = state.hermiticity_deviation();
    const double min_eig = state.min_eigenvalue();
    stats.max_trace_deviation = std::max(stats.max_trace_deviation, trace_dev);
    stats.max_hermiticity_deviation = std::max(stats.max_hermiticity_deviation, herm_dev);
    stats.min_eigenvalue = std::min(stats.min_eigenvalue, min_eig);
    ++stats.samples;
    if (config.enforce_invariants) {
      std::ostringstream msg;
      if (herm_dev >= kHermiticityTolerance) {
        msg << "integrate: Hermiticity deviation " << herm_dev << " at t = " << state.t;
        throw EvolutionAborted(msg.str(), last_good);
      }
      if (min_eig <= kPositivityTolerance) {
        msg << "integrate: negative eigenvalue " << min_eig << " at t = " << state.t;
        throw EvolutionAborted(msg.str(), last_good);
      }
    }
    last_good = state;
    if (on_sample) on_sample(state);
  };

  sample();
  const std::int64_t steps = config.steps();
  DensityState before = state;
  for (std::int64_t k = 1; k <= steps; ++k) {
    before.rho = state.rho;
    before.t = state.t;
    rk4_step(state, config.dt, generator, ws);
    // Re-anchor the clock to avoid accumulating dt rounding.
    state.t = t0 + static_cast<double>(k) * config.dt;
    const Complex tr = state.rho.trace();
    const double dev = std::abs(tr - Complex(1.0, 0.0));
    if (!std::isfinite(dev) || dev > kTraceAbortTolerance) {
      std::ostringstream msg;
      msg << "integrate: trace deviation " << dev << " at t = " << state.t;
      throw EvolutionAborted(msg.str(), before);
    }
    if (dev > kTraceTolerance) {
      state.rho /= tr;
      ++stats.renormalizations;
    }
    if (k % config.record_every == 0) sample();
  }
  return {std::move(state), stats};
}

}  // namespace bellstab
