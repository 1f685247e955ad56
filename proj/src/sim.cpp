// Copyright 2026 The swapnet Authors
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

#include "swapnet/sim.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>

namespace swapnet {

namespace {

int log2_dim(std::size_t dim) {
  if (dim == 0 || !std::has_single_bit(dim))
    throw std::invalid_argument("state dimension must be a power of two");
  return std::countr_zero(dim);
}

// Applies u to the amplitudes reachable at data[i * stride], i < 2^n.
void apply_kernel(Complex* data, std::ptrdiff_t stride, int n, const Matrix& u,
                  std::span<const int> wires) {
  const int k = static_cast<int>(wires.size());
  const std::size_t local_dim = std::size_t{1} << k;
  std::uint64_t all = 0;
  std::vector<std::uint64_t> offsets(local_dim, 0);
  for (int j = 0; j < k; ++j) {
    if (wires[j] < 0 || wires[j] >= n) throw std::out_of_range("apply: wire out of range");
    const std::uint64_t bit = std::uint64_t{1} << (n - 1 - wires[j]);
    all |= bit;
    for (std::size_t local = 0; local < local_dim; ++local)
      if ((local >> (k - 1 - j)) & 1u) offsets[local] |= bit;
  }
  Eigen::VectorXcd tmp(local_dim), out(local_dim);
  const std::uint64_t dim = std::uint64_t{1} << n;
  for (std::uint64_t base = 0; base < dim; ++base) {
    if (base & all) continue;
    for (std::size_t l = 0; l < local_dim; ++l) tmp[l] = data[(base | offsets[l]) * stride];
    out.noalias() = u * tmp;
    for (std::size_t l = 0; l < local_dim; ++l) data[(base | offsets[l]) * stride] = out[l];
  }
}

}  // namespace

QuantumState QuantumState::pure(Vector amplitudes) {
  QuantumState s;
  s.n_ = log2_dim(static_cast<std::size_t>(amplitudes.size()));
  s.mode_ = Mode::Pure;
  s.amps_ = std::move(amplitudes);
  return s;
}

QuantumState QuantumState::basis(int n, std::uint64_t index) {
  if (n < 0 || n > 30) throw std::invalid_argument("basis: unsupported qubit count");
  Vector v = Vector::Zero(std::int64_t{1} << n);
  if (index >= static_cast<std::uint64_t>(v.size()))
    throw std::out_of_range("basis: index out of range");
  v[static_cast<Eigen::Index>(index)] = 1.0;
  return pure(std::move(v));
}

QuantumState QuantumState::product(std::span<const Eigen::Vector2cd> qubits) {
  Vector v = Vector::Ones(1);
  for (const auto& q : qubits) {
    Vector next(v.size() * 2);
    for (Eigen::Index i = 0; i < v.size(); ++i) {
      next[2 * i] = v[i] * q[0];
      next[2 * i + 1] = v[i] * q[1];
    }
    v = std::move(next);
  }
  return pure(std::move(v));
}

QuantumState QuantumState::mixed(Matrix rho, int max_qubits) {
  if (rho.rows() != rho.cols()) throw std::invalid_argument("mixed: density matrix not square");
  QuantumState s;
  s.n_ = log2_dim(static_cast<std::size_t>(rho.rows()));
  if (s.n_ > max_qubits)
    throw std::invalid_argument("mixed: " + std::to_string(s.n_) +
                                " qubits exceeds density-matrix cap of " +
                                std::to_string(max_qubits));
  s.mode_ = Mode::Mixed;
  s.rho_ = std::move(rho);
  return s;
}

QuantumState QuantumState::mixed_from(const QuantumState& pure_state, int max_qubits) {
  return mixed(pure_state.to_density(), max_qubits);
}

const Vector& QuantumState::amplitudes() const {
  if (!is_pure()) throw std::logic_error("amplitudes: state is mixed");
  return amps_;
}
Vector& QuantumState::amplitudes() {
  if (!is_pure()) throw std::logic_error("amplitudes: state is mixed");
  return amps_;
}
const Matrix& QuantumState::density() const {
  if (is_pure()) throw std::logic_error("density: state is pure");
  return rho_;
}
Matrix& QuantumState::density() {
  if (is_pure()) throw std::logic_error("density: state is pure");
  return rho_;
}

Matrix QuantumState::to_density() const {
  if (is_pure()) return amps_ * amps_.adjoint();
  return rho_;
}

bool QuantumState::is_valid(double tol, double psd_tol) const {
  if (is_pure()) return std::abs(amps_.squaredNorm() - 1.0) <= tol;
  if (std::abs(rho_.trace() - Complex(1.0)) > tol) return false;
  if ((rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() > tol) return false;
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho_, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -psd_tol;
}

NoiseModel::NoiseModel(double p) : p_two_qubit(p) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::invalid_argument("NoiseModel: probability must lie in [0, 1]");
}

void apply_matrix(QuantumState& state, const Matrix& u, std::span<const int> wires) {
  const int n = state.n();
  if (u.rows() != (Eigen::Index{1} << wires.size()))
    throw std::invalid_argument("apply_matrix: matrix size does not match operand count");
  if (state.is_pure()) {
    apply_kernel(state.amplitudes().data(), 1, n, u, wires);
    return;
  }
  Matrix& rho = state.density();
  const auto dim = rho.rows();
  // U rho: act on the row index of every column.
  for (Eigen::Index c = 0; c < dim; ++c) apply_kernel(rho.col(c).data(), 1, n, u, wires);
  // (U rho) U^dagger: act with conj(U) on the column index of every row.
  const Matrix uc = u.conjugate();
  for (Eigen::Index r = 0; r < dim; ++r) apply_kernel(rho.data() + r, dim, n, uc, wires);
}

void apply_gate(QuantumState& state, const Gate& gate) {
  apply_matrix(state, gate_matrix(gate), gate.wires);
}

QuantumState apply_circuit(QuantumState state, const Circuit& circuit, const NoiseModel& noise) {
  if (state.n() != circuit.n_wires())
    throw std::invalid_argument("apply_circuit: state has " + std::to_string(state.n()) +
                                " qubits, circuit has " + std::to_string(circuit.n_wires()) +
                                " wires");
  if (!noise.noiseless() && state.is_pure())
    throw std::invalid_argument("apply_circuit: noisy simulation requires a mixed state");
  for (const auto& g : circuit.gates()) {
    apply_gate(state, g);
    if (!noise.noiseless() && g.arity() >= 2) depolarize(state, g.wires, noise.p_two_qubit);
  }
  return state;
}

QuantumState apply_inverse(QuantumState state, const Circuit& circuit) {
  if (state.n() != circuit.n_wires())
    throw std::invalid_argument("apply_inverse: dimension mismatch");
  for (auto it = circuit.gates().rbegin(); it != circuit.gates().rend(); ++it)
    apply_matrix(state, gate_matrix(*it).adjoint(), it->wires);
  return state;
}

Matrix circuit_unitary(const Circuit& circuit) {
  const int n = circuit.n_wires();
  if (n > kUnitaryQubitCap)
    throw std::invalid_argument("circuit_unitary: " + std::to_string(n) +
                                " wires exceeds cap of " + std::to_string(kUnitaryQubitCap));
  const Eigen::Index dim = Eigen::Index{1} << n;
  Matrix u(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c)
    u.col(c) = apply_circuit(QuantumState::basis(n, static_cast<std::uint64_t>(c)), circuit)
                   .amplitudes();
  return u;
}

void depolarize(QuantumState& state, std::span<const int> wires, double p) {
  if (state.is_pure()) throw std::invalid_argument("depolarize: requires a mixed state");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("depolarize: p outside [0, 1]");
  if (p == 0.0) return;
  const int n = state.n();
  std::uint64_t mask = 0;
  for (int w : wires) {
    if (w < 0 || w >= n) throw std::out_of_range("depolarize: wire out of range");
    mask |= std::uint64_t{1} << (n - 1 - w);
  }
  const double scale = 1.0 / static_cast<double>(std::uint64_t{1} << wires.size());
  Matrix& rho = state.density();
  const auto dim = static_cast<std::uint64_t>(rho.rows());

  // traced(r, s) for rest-indices r, s (subset bits cleared).
  Matrix traced = Matrix::Zero(rho.rows(), rho.cols());
  for (std::uint64_t c = 0; c < dim; ++c)
    for (std::uint64_t r = 0; r < dim; ++r)
      if ((r & mask) == (c & mask)) traced(r & ~mask, c & ~mask) += rho(r, c);

  rho *= (1.0 - p);
  for (std::uint64_t c = 0; c < dim; ++c)
    for (std::uint64_t r = 0; r < dim; ++r)
      if ((r & mask) == (c & mask)) rho(r, c) += p * scale * traced(r & ~mask, c & ~mask);
}

void depolarize_two_qubit(QuantumState& state, int a, int b, double p) {
  if (a == b) throw std::invalid_argument("depolarize_two_qubit: wires must differ");
  const std::array<int, 2> w{a, b};
  depolarize(state, w, p);
}

double fidelity(const QuantumState& rho1, const QuantumState& rho2) {
  if (rho1.n() != rho2.n()) throw std::invalid_argument("fidelity: dimension mismatch");
  auto clamp = [](double f) { return std::clamp(f, 0.0, 1.0); };
  if (rho1.is_pure() && rho2.is_pure())
    return clamp(std::norm(rho1.amplitudes().dot(rho2.amplitudes())));
  if (rho1.is_pure() || rho2.is_pure()) {
    const auto& phi = rho1.is_pure() ? rho1 : rho2;
    const auto& rho = rho1.is_pure() ? rho2 : rho1;
    if (!rho.is_valid(1e-8)) throw std::invalid_argument("fidelity: invalid density matrix");
    const Complex v = phi.amplitudes().dot(rho.density() * phi.amplitudes());
    return clamp(v.real());
  }
  constexpr double psd_tol = 1e-9;
  Eigen::SelfAdjointEigenSolver<Matrix> es1(rho1.density());
  if (es1.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("fidelity: rho1 is not positive semidefinite");
  Eigen::SelfAdjointEigenSolver<Matrix> es2(rho2.density(), Eigen::EigenvaluesOnly);
  if (es2.eigenvalues().minCoeff() < -psd_tol)
    throw std::invalid_argument("fidelity: rho2 is not positive semidefinite");
  const Eigen::VectorXd roots = es1.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  const Matrix sqrt1 = es1.eigenvectors() * roots.asDiagonal() * es1.eigenvectors().adjoint();
  Matrix inner = sqrt1 * rho2.density() * sqrt1;
  inner = 0.5 * (inner + inner.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Matrix> es(inner, Eigen::EigenvaluesOnly);
  const double root_sum = es.eigenvalues().cwiseMax(0.0).cwiseSqrt().sum();
  return clamp(root_sum * root_sum);
}

std::optional<BasisAmplitude> apply_monomial(const Circuit& circuit, std::uint64_t input) {
  const int n = circuit.n_wires();
  if (n > 64) throw std::invalid_argument("apply_monomial: more than 64 wires");
  BasisAmplitude state{input, Complex(1.0, 0.0)};
  for (const auto& g : circuit.gates()) {
    const Matrix u = gate_matrix(g);
    const int k = g.arity();
    std::uint64_t col = 0;
    for (int j = 0; j < k; ++j) col = (col << 1) | static_cast<std::uint64_t>(wire_bit(state.index, n, g.wires[j]));
    Eigen::Index row = -1;
    for (Eigen::Index r = 0; r < u.rows(); ++r) {
      if (std::abs(u(r, static_cast<Eigen::Index>(col))) < 1e-14) continue;
      if (row >= 0) return std::nullopt;
      row = r;
    }
    if (row < 0) return std::nullopt;
    state.amplitude *= u(row, static_cast<Eigen::Index>(col));
    for (int j = 0; j < k; ++j)
      state.index = with_wire_bit(state.index, n, g.wires[j], static_cast<int>((row >> (k - 1 - j)) & 1));
  }
  return state;
}

SparseState apply_sparse(const Circuit& circuit, SparseState state, double prune) {
  const int n = circuit.n_wires();
  if (n > 64) throw std::invalid_argument("apply_sparse: more than 64 wires");
  for (const auto& g : circuit.gates()) {
    const Matrix u = gate_matrix(g);
    const int k = g.arity();
    SparseState next;
    for (const auto& [index, amp] : state) {
      std::uint64_t col = 0;
      for (int j = 0; j < k; ++j) col = (col << 1) | static_cast<std::uint64_t>(wire_bit(index, n, g.wires[j]));
      for (Eigen::Index r = 0; r < u.rows(); ++r) {
        const Complex entry = u(r, static_cast<Eigen::Index>(col));
        if (entry == Complex(0.0)) continue;
        std::uint64_t out = index;
        for (int j = 0; j < k; ++j)
          out = with_wire_bit(out, n, g.wires[j], static_cast<int>((r >> (k - 1 - j)) & 1));
        next[out] += entry * amp;
      }
    }
    std::erase_if(next, [prune](const auto& kv) { return std::abs(kv.second) <= prune; });
    state = std::move(next);
  }
  return state;
}

}  // namespace swapnet
