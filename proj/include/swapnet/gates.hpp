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

// Gate set used by the SWAP-network compiler and the QRAM builder.
//
// Basis convention: within a gate, the first operand is the most significant
// bit, so a two-qubit matrix acts on |q_first q_second> ordered as
// |00>, |01>, |10>, |11>. Matrices are exact; no global-phase quotient is taken
// anywhere in this header.

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace swapnet {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

using Complex = std::complex<double>;
using Matrix = CMatrix<double>;

enum class GateKind {
  I,
  X,
  Y,
  Z,
  S,
  Sdag,
  H,
  CZ,
  CNOT,
  SWAP,
  iSWAP,
  iSCZ,
  fSim,    ///< params: theta, phi
  XYevol,  ///< params: g*t
  ZZevol,  ///< params: g*t
  CSWAP,   ///< control, target, target
  CiSWAP,  ///< control, target, target
  CiSCZ,   ///< control, target, target
  CCZ,
};

inline constexpr std::array<GateKind, 19> kAllGateKinds = {
    GateKind::I,      GateKind::X,      GateKind::Y,     GateKind::Z,
    GateKind::S,      GateKind::Sdag,   GateKind::H,     GateKind::CZ,
    GateKind::CNOT,   GateKind::SWAP,   GateKind::iSWAP, GateKind::iSCZ,
    GateKind::fSim,   GateKind::XYevol, GateKind::ZZevol, GateKind::CSWAP,
    GateKind::CiSWAP, GateKind::CiSCZ,  GateKind::CCZ};

/// Number of qubit operands.
int arity(GateKind kind);
/// Number of angle parameters (radians).
int param_count(GateKind kind);

/// Lowercase serialization name, e.g. "iscz", "cswap", "fsim".
std::string_view gate_name(GateKind kind);
std::optional<GateKind> gate_kind_from_name(std::string_view name);

/// A gate instance: kind, operand wires and angle parameters.
struct Gate {
  GateKind kind = GateKind::I;
  std::vector<int> wires;
  std::vector<double> params;

  Gate() = default;
  /// Throws std::invalid_argument on operand/parameter count mismatch,
  /// repeated operands, negative wires or non-finite parameters.
  Gate(GateKind kind, std::vector<int> wires, std::vector<double> params = {});

  int arity() const { return static_cast<int>(wires.size()); }
  bool operator==(const Gate&) const = default;
};

namespace detail {

template <typename Scalar>
CMatrix<Scalar> controlled(const CMatrix<Scalar>& target) {
  const auto dim = target.rows();
  CMatrix<Scalar> m = CMatrix<Scalar>::Identity(2 * dim, 2 * dim);
  m.bottomRightCorner(dim, dim) = target;
  return m;
}

}  // namespace detail

/// fSim(theta, phi) with -i sin(theta) off-diagonals and e^{-i phi} on |11>.
template <typename Scalar = double>
CMatrix<Scalar> fsim_matrix(Scalar theta, Scalar phi) {
  using C = std::complex<Scalar>;
  CMatrix<Scalar> m = CMatrix<Scalar>::Zero(4, 4);
  m(0, 0) = C(1);
  m(1, 1) = m(2, 2) = C(std::cos(theta));
  m(1, 2) = m(2, 1) = C(0, -std::sin(theta));
  m(3, 3) = std::exp(C(0, -phi));
  return m;
}

/// exp(-i H t) for H = g/2 (XX + YY); argument is the product g*t.
template <typename Scalar = double>
CMatrix<Scalar> xy_evolution(Scalar gt) {
  using C = std::complex<Scalar>;
  CMatrix<Scalar> m = CMatrix<Scalar>::Zero(4, 4);
  m(0, 0) = m(3, 3) = C(1);
  m(1, 1) = m(2, 2) = C(std::cos(gt));
  m(1, 2) = m(2, 1) = C(0, -std::sin(gt));
  return m;
}

/// exp(-i H t) for H = g ZZ; argument is the product g*t.
template <typename Scalar = double>
CMatrix<Scalar> zz_evolution(Scalar gt) {
  using C = std::complex<Scalar>;
  const C global = std::exp(C(0, -gt));
  const C inner = std::exp(C(0, 2 * gt));
  CMatrix<Scalar> m = CMatrix<Scalar>::Zero(4, 4);
  m(0, 0) = m(3, 3) = global;
  m(1, 1) = m(2, 2) = global * inner;
  return m;
}

/// Exact unitary of a gate kind. Throws std::invalid_argument when the
/// parameter count is wrong or a parameter is not finite.
template <typename Scalar = double>
CMatrix<Scalar> gate_matrix(GateKind kind, std::span<const Scalar> params = {}) {
  using C = std::complex<Scalar>;
  using M = CMatrix<Scalar>;
  if (static_cast<int>(params.size()) != param_count(kind))
    throw std::invalid_argument("gate_matrix: wrong parameter count for " +
                                std::string(gate_name(kind)));
  for (Scalar p : params)
    if (!std::isfinite(p))
      throw std::invalid_argument("gate_matrix: non-finite parameter");

  const C i(0, 1);
  const Scalar r = Scalar(1) / std::sqrt(Scalar(2));
  M m;
  switch (kind) {
    case GateKind::I:
      return M::Identity(2, 2);
    case GateKind::X:
      m = M::Zero(2, 2);
      m(0, 1) = m(1, 0) = C(1);
      return m;
    case GateKind::Y:
      m = M::Zero(2, 2);
      m(0, 1) = -i;
      m(1, 0) = i;
      return m;
    case GateKind::Z:
      m = M::Identity(2, 2);
      m(1, 1) = C(-1);
      return m;
    case GateKind::S:
      m = M::Identity(2, 2);
      m(1, 1) = i;
      return m;
    case GateKind::Sdag:
      m = M::Identity(2, 2);
      m(1, 1) = -i;
      return m;
    case GateKind::H:
      m = M::Constant(2, 2, C(r));
      m(1, 1) = C(-r);
      return m;
    case GateKind::CZ:
      m = M::Identity(4, 4);
      m(3, 3) = C(-1);
      return m;
    case GateKind::CNOT:
      return detail::controlled<Scalar>(gate_matrix<Scalar>(GateKind::X));
    case GateKind::SWAP:
      m = M::Zero(4, 4);
      m(0, 0) = m(3, 3) = m(1, 2) = m(2, 1) = C(1);
      return m;
    case GateKind::iSWAP:
      // (+i)^{b1 xor b2} on the exchanged pair.
      m = M::Zero(4, 4);
      m(0, 0) = m(3, 3) = C(1);
      m(1, 2) = m(2, 1) = i;
      return m;
    case GateKind::iSCZ:
      m = M::Zero(4, 4);
      m(0, 0) = C(1);
      m(1, 2) = m(2, 1) = i;
      m(3, 3) = C(-1);
      return m;
    case GateKind::fSim:
      return fsim_matrix<Scalar>(params[0], params[1]);
    case GateKind::XYevol:
      return xy_evolution<Scalar>(params[0]);
    case GateKind::ZZevol:
      return zz_evolution<Scalar>(params[0]);
    case GateKind::CSWAP:
      return detail::controlled<Scalar>(gate_matrix<Scalar>(GateKind::SWAP));
    case GateKind::CiSWAP:
      return detail::controlled<Scalar>(gate_matrix<Scalar>(GateKind::iSWAP));
    case GateKind::CiSCZ:
      return detail::controlled<Scalar>(gate_matrix<Scalar>(GateKind::iSCZ));
    case GateKind::CCZ:
      m = M::Identity(8, 8);
      m(7, 7) = C(-1);
      return m;
  }
  throw std::invalid_argument("gate_matrix: unknown gate kind");
}

inline Matrix gate_matrix(const Gate& gate) {
  return gate_matrix<double>(gate.kind, std::span<const double>(gate.params));
}

/// Single-qubit Pauli labels in the order used by PauliExpansion.
enum class Pauli { I = 0, X = 1, Y = 2, Z = 3 };

Matrix pauli_matrix(Pauli p);
/// Kronecker product first (x) second, first operand most significant.
Matrix pauli_word(Pauli first, Pauli second);

/// Two-qubit operator written as sum_{a,b} c_{ab} (P_a (x) P_b).
struct PauliExpansion {
  std::array<Complex, 16> coefficients{};

  Complex& operator()(Pauli first, Pauli second) {
    return coefficients[4 * static_cast<int>(first) + static_cast<int>(second)];
  }
  Complex operator()(Pauli first, Pauli second) const {
    return coefficients[4 * static_cast<int>(first) + static_cast<int>(second)];
  }

  Matrix reconstruct() const;
  /// Human readable form, e.g. "0.5*II + 0.5*XX + 0.5*YY + 0.5*ZZ".
  std::string to_string(double tol = 1e-12) const;
};

/// Expansion via c_ab = Tr[(P_a (x) P_b) U] / 4. Throws std::invalid_argument
/// for kinds that are not two-qubit gates.
PauliExpansion pauli_expansion(GateKind kind, std::span<const double> params = {});
PauliExpansion pauli_expansion(const Matrix& two_qubit_matrix);

}  // namespace swapnet
