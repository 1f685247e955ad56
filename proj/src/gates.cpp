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

#include "swapnet/gates.hpp"

#include <algorithm>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace swapnet {

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  int arity;
  int params;
};

constexpr std::array<KindInfo, 19> kKindTable = {{
    {GateKind::I, "i", 1, 0},
    {GateKind::X, "x", 1, 0},
    {GateKind::Y, "y", 1, 0},
    {GateKind::Z, "z", 1, 0},
    {GateKind::S, "s", 1, 0},
    {GateKind::Sdag, "sdag", 1, 0},
    {GateKind::H, "h", 1, 0},
    {GateKind::CZ, "cz", 2, 0},
    {GateKind::CNOT, "cnot", 2, 0},
    {GateKind::SWAP, "swap", 2, 0},
    {GateKind::iSWAP, "iswap", 2, 0},
    {GateKind::iSCZ, "iscz", 2, 0},
    {GateKind::fSim, "fsim", 2, 2},
    {GateKind::XYevol, "xy", 2, 1},
    {GateKind::ZZevol, "zz", 2, 1},
    {GateKind::CSWAP, "cswap", 3, 0},
    {GateKind::CiSWAP, "ciswap", 3, 0},
    {GateKind::CiSCZ, "ciscz", 3, 0},
    {GateKind::CCZ, "ccz", 3, 0},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& entry : kKindTable)
    if (entry.kind == kind) return entry;
  throw std::invalid_argument("unknown gate kind");
}

}  // namespace

int arity(GateKind kind) { return info(kind).arity; }
int param_count(GateKind kind) { return info(kind).params; }
std::string_view gate_name(GateKind kind) { return info(kind).name; }

std::optional<GateKind> gate_kind_from_name(std::string_view name) {
  for (const auto& entry : kKindTable)
    if (entry.name == name) return entry.kind;
  return std::nullopt;
}

Gate::Gate(GateKind kind_, std::vector<int> wires_, std::vector<double> params_)
    : kind(kind_), wires(std::move(wires_)), params(std::move(params_)) {
  const auto name = std::string(gate_name(kind));
  if (static_cast<int>(wires.size()) != swapnet::arity(kind))
    throw std::invalid_argument(name + ": expected " +
                                std::to_string(swapnet::arity(kind)) + " wires");
  if (static_cast<int>(params.size()) != param_count(kind))
    throw std::invalid_argument(name + ": expected " +
                                std::to_string(param_count(kind)) + " params");
  for (std::size_t a = 0; a < wires.size(); ++a) {
    if (wires[a] < 0) throw std::invalid_argument(name + ": negative wire index");
    for (std::size_t b = a + 1; b < wires.size(); ++b)
      if (wires[a] == wires[b])
        throw std::invalid_argument(name + ": repeated operand wire");
  }
  for (double p : params)
    if (!std::isfinite(p)) throw std::invalid_argument(name + ": non-finite parameter");
}

Matrix pauli_matrix(Pauli p) {
  switch (p) {
    case Pauli::I:
      return gate_matrix<double>(GateKind::I);
    case Pauli::X:
      return gate_matrix<double>(GateKind::X);
    case Pauli::Y:
      return gate_matrix<double>(GateKind::Y);
    case Pauli::Z:
      return gate_matrix<double>(GateKind::Z);
  }
  throw std::invalid_argument("unknown Pauli");
}

Matrix pauli_word(Pauli first, Pauli second) {
  const Matrix a = pauli_matrix(first);
  const Matrix b = pauli_matrix(second);
  Matrix out(4, 4);
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block(2 * r, 2 * c, 2, 2) = a(r, c) * b;
  return out;
}

Matrix PauliExpansion::reconstruct() const {
  Matrix m = Matrix::Zero(4, 4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      m += coefficients[4 * a + b] * pauli_word(static_cast<Pauli>(a), static_cast<Pauli>(b));
  return m;
}

std::string PauliExpansion::to_string(double tol) const {
  static constexpr std::array<char, 4> labels = {'I', 'X', 'Y', 'Z'};
  std::ostringstream os;
  os << std::setprecision(6);
  bool first = true;
  for (int a = 0; a < 4; ++a) {
    for (int b = 0; b < 4; ++b) {
      const Complex c = coefficients[4 * a + b];
      if (std::abs(c) <= tol) continue;
      if (!first) os << " + ";
      first = false;
      if (std::abs(c.imag()) <= tol)
        os << c.real();
      else if (std::abs(c.real()) <= tol)
        os << c.imag() << "i";
      else
        os << "(" << c.real() << (c.imag() < 0 ? "" : "+") << c.imag() << "i)";
      os << "*" << labels[a] << labels[b];
    }
  }
  return first ? std::string("0") : os.str();
}

PauliExpansion pauli_expansion(const Matrix& u) {
  if (u.rows() != 4 || u.cols() != 4)
    throw std::invalid_argument("pauli_expansion: expected a 4x4 matrix");
  PauliExpansion out;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) {
      const Matrix p = pauli_word(static_cast<Pauli>(a), static_cast<Pauli>(b));
      // Pauli words are Hermitian, so Tr[P^dagger U] = Tr[P U].
      out.coefficients[4 * a + b] = (p * u).trace() / 4.0;
    }
  return out;
}

PauliExpansion pauli_expansion(GateKind kind, std::span<const double> params) {
  if (arity(kind) != 2)
    throw std::invalid_argument("pauli_expansion: " + std::string(gate_name(kind)) +
                                " is not a two-qubit gate");
  return pauli_expansion(gate_matrix<double>(kind, params));
}

}  // namespace swapnet
