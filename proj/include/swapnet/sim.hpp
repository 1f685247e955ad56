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

#pragma once

// Exact statevector and density-matrix simulation.
//
// Wire w of an n-wire circuit is bit (n - 1 - w) of the basis index, so
// wire 0 is the most significant qubit, matching the gate-local convention.

#include "swapnet/circuit.hpp"
#include "swapnet/gates.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace swapnet {

using Vector = Eigen::VectorXcd;

inline constexpr int kDefaultMixedQubitCap = 10;
inline constexpr int kUnitaryQubitCap = 10;

class QuantumState {
 public:
  enum class Mode { Pure, Mixed };

  /// Takes amplitudes as given; size must be a power of two.
  static QuantumState pure(Vector amplitudes);
  static QuantumState basis(int n, std::uint64_t index);
  /// Kronecker product of single-qubit states, wire 0 first.
  static QuantumState product(std::span<const Eigen::Vector2cd> qubits);
  static QuantumState mixed(Matrix rho, int max_qubits = kDefaultMixedQubitCap);
  /// |psi><psi| of a pure state.
  static QuantumState mixed_from(const QuantumState& pure_state,
                                 int max_qubits = kDefaultMixedQubitCap);

  int n() const { return n_; }
  Mode mode() const { return mode_; }
  bool is_pure() const { return mode_ == Mode::Pure; }
  std::size_t dim() const { return std::size_t{1} << n_; }

  const Vector& amplitudes() const;
  const Matrix& density() const;
  Vector& amplitudes();
  Matrix& density();

  /// Density matrix in either mode.
  Matrix to_density() const;

  /// Norm / trace / Hermiticity / PSD checks at the given tolerance.
  bool is_valid(double tol = 1e-10, double psd_tol = 1e-9) const;

 private:
  QuantumState() = default;
  Mode mode_ = Mode::Pure;
  int n_ = 0;
  Vector amps_;
  Matrix rho_;
};

struct NoiseModel {
  double p_two_qubit = 0.0;

  explicit NoiseModel(double p = 0.0);
  bool noiseless() const { return p_two_qubit == 0.0; }
};

/// U on the listed wires, in place. The matrix acts on the wires with the
/// first listed wire as its most significant bit.
void apply_matrix(QuantumState& state, const Matrix& u, std::span<const int> wires);
void apply_gate(QuantumState& state, const Gate& gate);

/// Applies every gate in order. With a non-trivial noise model the state must
/// be mixed; the channel follows every gate of arity two or more.
QuantumState apply_circuit(QuantumState state, const Circuit& circuit,
                           const NoiseModel& noise = NoiseModel{});

/// Applies the adjoint circuit (reversed order, conjugate-transposed matrices).
QuantumState apply_inverse(QuantumState state, const Circuit& circuit);

/// Full unitary by columns; throws std::invalid_argument above
/// kUnitaryQubitCap wires.
Matrix circuit_unitary(const Circuit& circuit);

/// rho -> (1 - p) rho + p Tr_S(rho) (x) I/2^|S| for the wire set S.
void depolarize(QuantumState& state, std::span<const int> wires, double p);
void depolarize_two_qubit(QuantumState& state, int a, int b, double p);

/// Tr[sqrt(sqrt(rho1) rho2 sqrt(rho1))]^2, with the <phi|rho|phi> shortcut
/// whenever either argument is pure.
double fidelity(const QuantumState& rho1, const QuantumState& rho2);

/// Result of pushing one basis state through a circuit made only of
/// monomial gates (one nonzero per column): the output basis index and the
/// accumulated phase.
struct BasisAmplitude {
  std::uint64_t index = 0;
  Complex amplitude{1.0, 0.0};
};

/// Basis-state tracking for permutation-with-phase circuits up to 64 wires.
/// Returns std::nullopt if some gate is not monomial.
std::optional<BasisAmplitude> apply_monomial(const Circuit& circuit, std::uint64_t input);

/// Basis-index -> amplitude map holding only the non-zero amplitudes.
using SparseState = std::map<std::uint64_t, Complex>;

/// Sparse simulation for circuits whose states stay on few basis states, up
/// to 64 wires. Amplitudes of magnitude <= prune are dropped after each gate.
SparseState apply_sparse(const Circuit& circuit, SparseState state, double prune = 1e-13);

/// Bit value of wire w in a basis index over n wires.
inline int wire_bit(std::uint64_t index, int n, int w) {
  return static_cast<int>((index >> (n - 1 - w)) & 1u);
}
inline std::uint64_t with_wire_bit(std::uint64_t index, int n, int w, int bit) {
  const std::uint64_t mask = std::uint64_t{1} << (n - 1 - w);
  return bit ? (index | mask) : (index & ~mask);
}

}  // namespace swapnet
