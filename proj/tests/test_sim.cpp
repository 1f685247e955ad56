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

#include <doctest.h>

#include <random>

using namespace swapnet;

namespace {

Vector random_vector(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Vector v(Eigen::Index{1} << n);
  for (auto& x : v) x = Complex(g(rng), g(rng));
  return v.normalized();
}

Matrix random_unitary(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  Matrix a(dim, dim);
  for (Eigen::Index i = 0; i < a.size(); ++i) a.data()[i] = Complex(g(rng), g(rng));
  return Eigen::HouseholderQR<Matrix>(a).householderQ() * Matrix::Identity(dim, dim);
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

// I (x) U (x) I for U on wires [first, first + k).
Matrix embed_contiguous(const Matrix& u, int n, int first) {
  const int k = static_cast<int>(std::log2(u.rows()));
  return kron(kron(Matrix::Identity(1 << first, 1 << first), u),
              Matrix::Identity(1 << (n - first - k), 1 << (n - first - k)));
}

// (1 - p) rho + p Tr_S(rho) (x) I / 2^|S|, by explicit index sums.
Matrix depolarize_oracle(const Matrix& rho, int n, const std::vector<int>& wires, double p) {
  std::uint64_t mask = 0;
  for (int w : wires) mask |= std::uint64_t{1} << (n - 1 - w);
  const double d = static_cast<double>(1 << wires.size());
  Matrix out = (1 - p) * rho;
  const auto dim = rho.rows();
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) {
      if ((static_cast<std::uint64_t>(i) & mask) != (static_cast<std::uint64_t>(j) & mask)) continue;
      Complex acc = 0;
      for (std::uint64_t s = 0; s < static_cast<std::uint64_t>(dim); ++s) {
        if (s & ~mask) continue;
        acc += rho((static_cast<std::uint64_t>(i) & ~mask) | s, (static_cast<std::uint64_t>(j) & ~mask) | s);
      }
      out(i, j) += p * acc / d;
    }
  return out;
}

}  // namespace

TEST_CASE("wire 0 is the most significant bit") {
  auto s = QuantumState::basis(3, 0);
  apply_gate(s, Gate(GateKind::X, {0}));
  CHECK(std::abs(s.amplitudes()[4] - Complex(1)) < 1e-15);
  CHECK(wire_bit(4, 3, 0) == 1);
  CHECK(with_wire_bit(0, 3, 2, 1) == 1);
  const Eigen::Vector2cd zero(1, 0), one(0, 1);
  const std::vector<Eigen::Vector2cd> qs{one, zero, one};
  CHECK(std::abs(QuantumState::product(qs).amplitudes()[5] - Complex(1)) < 1e-15);
}

TEST_CASE("gate kernel matches the Kronecker embedding") {
  std::mt19937_64 rng(11);
  const int n = 5;
  for (int k = 1; k <= 3; ++k)
    for (int first = 0; first + k <= n; ++first) {
      const Matrix u = random_unitary(1 << k, rng);
      const Vector v = random_vector(n, rng);
      auto s = QuantumState::pure(v);
      std::vector<int> wires(k);
      for (int j = 0; j < k; ++j) wires[j] = first + j;
      apply_matrix(s, u, wires);
      CHECK((s.amplitudes() - embed_contiguous(u, n, first) * v).norm() < 1e-12);
    }
}

TEST_CASE("non-contiguous operands equal SWAP-conjugated contiguous ones") {
  std::mt19937_64 rng(5);
  const Matrix u = random_unitary(4, rng);
  const Vector v = random_vector(4, rng);
  auto direct = QuantumState::pure(v);
  const int w30[] = {3, 0};
  apply_matrix(direct, u, w30);
  // Bring wire 3 to wire 1, act on (0, 1) with operands flipped, move back.
  const Matrix swap = gate_matrix<double>(GateKind::SWAP);
  auto routed = QuantumState::pure(v);
  const int w13[] = {1, 3};
  const int w01[] = {0, 1};
  apply_matrix(routed, swap, w13);
  apply_matrix(routed, swap * u * swap, w01);
  apply_matrix(routed, swap, w13);
  CHECK((routed.amplitudes() - direct.amplitudes()).norm() < 1e-12);
}

TEST_CASE("density evolution matches U rho U^dagger") {
  std::mt19937_64 rng(3);
  const int n = 3;
  const Vector v = random_vector(n, rng);
  auto rho = QuantumState::mixed_from(QuantumState::pure(v));
  Circuit c(n);
  c.add(GateKind::H, {1}).add(GateKind::iSCZ, {2, 0}).add(GateKind::CSWAP, {1, 0, 2}).add(GateKind::S, {0});
  const auto out = apply_circuit(rho, c);
  const Matrix u = circuit_unitary(c);
  CHECK((out.density() - u * v * v.adjoint() * u.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
  const auto pure_out = apply_circuit(QuantumState::pure(v), c);
  CHECK((pure_out.amplitudes() - u * v).norm() < 1e-12);
}

TEST_CASE("inverse undoes the circuit") {
  std::mt19937_64 rng(8);
  Circuit c(3);
  c.add(GateKind::fSim, {0, 2}, {0.4, 1.3}).add(GateKind::Sdag, {1}).add(GateKind::CiSWAP, {1, 2, 0});
  const Vector v = random_vector(3, rng);
  const auto back = apply_inverse(apply_circuit(QuantumState::pure(v), c), c);
  CHECK((back.amplitudes() - v).norm() < 1e-12);
  Circuit wide(11);
  CHECK_THROWS_AS(circuit_unitary(wide), std::invalid_argument);
}

TEST_CASE("depolarizing channel matches the partial-trace formula") {
  std::mt19937_64 rng(21);
  const int n = 3;
  for (const std::vector<int>& wires : {std::vector<int>{0, 2}, std::vector<int>{1}, std::vector<int>{2, 0, 1}}) {
    const Vector v = random_vector(n, rng);
    auto s = QuantumState::mixed_from(QuantumState::pure(v));
    const Matrix rho = s.density();
    depolarize(s, wires, 0.3);
    CHECK((s.density() - depolarize_oracle(rho, n, wires, 0.3)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(s.density().trace() - Complex(1)) < 1e-12);
    CHECK(s.is_valid());
  }
}

TEST_CASE("full depolarization of a Bell pair is maximally mixed") {
  Circuit bell(2);
  bell.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1});
  auto s = apply_circuit(QuantumState::mixed_from(QuantumState::basis(2, 0)), bell);
  depolarize_two_qubit(s, 0, 1, 1.0);
  CHECK((s.density() - Matrix::Identity(4, 4) / 4.0).cwiseAbs().maxCoeff() < 1e-12);
  CHECK_THROWS_AS(depolarize_two_qubit(s, 1, 1, 0.1), std::invalid_argument);
  auto pure = QuantumState::basis(2, 0);
  CHECK_THROWS_AS(depolarize_two_qubit(pure, 0, 1, 0.1), std::invalid_argument);
}

TEST_CASE("noise follows every multi-qubit gate") {
  Circuit c(2);
  c.add(GateKind::X, {0}).add(GateKind::CZ, {0, 1}).add(GateKind::CZ, {0, 1});
  const auto start = QuantumState::mixed_from(QuantumState::basis(2, 0));
  const auto noisy = apply_circuit(start, c, NoiseModel(0.1));
  // Two channel applications on |10><10|: population 0.9^2 + (1 - 0.81) / 4.
  CHECK(std::abs(noisy.density()(2, 2).real() - (0.81 + 0.19 / 4)) < 1e-12);
  CHECK_THROWS_AS(apply_circuit(QuantumState::basis(2, 0), c, NoiseModel(0.1)), std::invalid_argument);
  CHECK_THROWS_AS(NoiseModel(1.5), std::invalid_argument);
}

TEST_CASE("fidelity") {
  std::mt19937_64 rng(4);
  const Vector a = random_vector(2, rng), b = random_vector(2, rng);
  const auto pa = QuantumState::pure(a), pb = QuantumState::pure(b);
  const double overlap = std::norm(a.dot(b));
  CHECK(std::abs(fidelity(pa, pb) - overlap) < 1e-12);
  CHECK(std::abs(fidelity(QuantumState::mixed_from(pa), pb) - overlap) < 1e-12);
  CHECK(std::abs(fidelity(QuantumState::mixed_from(pa), QuantumState::mixed_from(pb)) - overlap) < 1e-8);
  // Commuting diagonal states: (sum sqrt(p q))^2.
  Matrix r1 = Matrix::Zero(2, 2), r2 = Matrix::Zero(2, 2);
  r1(0, 0) = 0.7;
  r1(1, 1) = 0.3;
  r2(0, 0) = 0.2;
  r2(1, 1) = 0.8;
  const double expect = std::pow(std::sqrt(0.14) + std::sqrt(0.24), 2);
  CHECK(std::abs(fidelity(QuantumState::mixed(r1), QuantumState::mixed(r2)) - expect) < 1e-10);
  CHECK(std::abs(fidelity(QuantumState::mixed(r1), QuantumState::mixed(r1)) - 1.0) < 1e-10);
  Matrix bad = Matrix::Zero(2, 2);
  bad(0, 0) = 1.5;
  bad(1, 1) = -0.5;
  CHECK_THROWS_AS(fidelity(QuantumState::mixed(bad), QuantumState::mixed(r1)), std::invalid_argument);
  CHECK_THROWS_AS(fidelity(pa, QuantumState::basis(3, 0)), std::invalid_argument);
}

TEST_CASE("state construction errors") {
  CHECK_THROWS_AS(QuantumState::pure(Vector::Ones(3)), std::invalid_argument);
  CHECK_THROWS_AS(QuantumState::basis(2, 4), std::out_of_range);
  CHECK_THROWS_AS(QuantumState::mixed(Matrix::Identity(2048, 2048) / 2048.0), std::invalid_argument);
  CHECK_NOTHROW(QuantumState::mixed(Matrix::Identity(2048, 2048) / 2048.0, 11));
  auto s = QuantumState::basis(2, 0);
  CHECK_THROWS_AS(s.density(), std::logic_error);
  const int bad[] = {0, 2};
  CHECK_THROWS_AS(apply_matrix(s, gate_matrix<double>(GateKind::CZ), bad), std::out_of_range);
}

TEST_CASE("basis trackers agree with the statevector") {
  Circuit c(4);
  c.add(GateKind::iSWAP, {0, 1}).add(GateKind::CiSWAP, {1, 2, 3}).add(GateKind::Sdag, {2}).add(GateKind::iSCZ, {3, 0});
  c.add(GateKind::CCZ, {0, 1, 2}).add(GateKind::X, {1});
  for (std::uint64_t in = 0; in < 16; ++in) {
    const auto dense = apply_circuit(QuantumState::basis(4, in), c).amplitudes();
    const auto mono = apply_monomial(c, in);
    REQUIRE(mono.has_value());
    CHECK(std::abs(dense[static_cast<Eigen::Index>(mono->index)] - mono->amplitude) < 1e-12);
    const auto sparse = apply_sparse(c, {{in, Complex(1)}});
    REQUIRE(sparse.size() == 1);
    CHECK(sparse.begin()->first == mono->index);
  }
  Circuit h(2);
  h.add(GateKind::H, {0}).add(GateKind::CNOT, {0, 1});
  CHECK_FALSE(apply_monomial(h, 0).has_value());
  const auto bell = apply_sparse(h, {{0, Complex(1)}});
  CHECK(bell.size() == 2);
  CHECK(std::abs(bell.at(3) - Complex(std::sqrt(0.5))) < 1e-15);
  h.add(GateKind::CNOT, {0, 1}).add(GateKind::H, {0});
  CHECK(apply_sparse(h, {{0, Complex(1)}}).size() == 1);
}
