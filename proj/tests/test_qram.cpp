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

#include "swapnet/qram.hpp"

#include "swapnet/sim.hpp"

#include <doctest.h>
#include <json.hpp>

#include <random>

using namespace swapnet;

namespace {

QramConfig make_config(int n, int k, std::vector<std::uint64_t> memory, bool ext = true, bool pipe = true) {
  QramConfig s;
  s.n = n;
  s.k = k;
  s.memory = std::move(memory);
  s.extensions = ext;
  s.pipeline = pipe;
  return s;
}

QramConfig random_config(int n, int k, std::mt19937_64& rng) {
  std::vector<std::uint64_t> mem(std::size_t{1} << n);
  for (auto& m : mem) m = rng() % (std::uint64_t{1} << k);
  return make_config(n, k, mem);
}

bool exact(const QramVerifyResult& r) { return r.max_deviation < 1e-9 && r.ancillas_restored && r.phase_free; }

// Every field except the extension-2 compensation entries.
void check_structural_counts(const GateCountReport& closed, const GateCountReport& tally) {
  CHECK(tally.f == closed.f);
  CHECK(tally.internal_swap_pairs == closed.internal_swap_pairs);
  CHECK(tally.root_swaps == closed.root_swaps);
  CHECK(tally.setting_routing_pairs == closed.setting_routing_pairs);
  CHECK(tally.fetch_routing_ops == closed.fetch_routing_ops);
  CHECK(tally.fetch_uni_pairs == closed.fetch_uni_pairs);
  CHECK(tally.fetch_bi_pairs == closed.fetch_bi_pairs);
  CHECK(tally.ext1_savings == closed.ext1_savings);
  CHECK(tally.ext2_savings == closed.ext2_savings);
  CHECK(tally.qpu_cz == closed.qpu_cz);
}

}  // namespace

TEST_CASE("config validation") {
  CHECK_NOTHROW(make_config(1, 2, {3, 0}).validate());
  CHECK_THROWS_AS(make_config(1, 2, {3}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, 2, {4, 0}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(0, 1, {}).validate(), std::invalid_argument);
  CHECK_THROWS_AS(make_config(1, 0, {0, 0}).validate(), std::invalid_argument);
  CHECK(make_config(2, 3, {5, 0, 0, 0}).word_bit(0, 0) == 1);
  CHECK(make_config(2, 3, {5, 0, 0, 0}).word_bit(0, 1) == 0);
  CHECK(make_config(2, 3, {5, 0, 0, 0}).word_bit(0, 2) == 1);
}

TEST_CASE("config JSON") {
  const auto s = make_config(2, 2, {1, 2, 3, 0}, false, true);
  const auto back = qram_config_from_json(to_json(s));
  CHECK(back.n == 2);
  CHECK(back.memory == s.memory);
  CHECK_FALSE(back.extensions);
  CHECK(qram_config_from_json(R"({"n": 1, "k": 1, "memory": [0, 1]})").extensions);
  CHECK_THROWS_AS(qram_config_from_json(R"({"n": 1, "k": 1, "memory": [0]})"), ParseError);
  CHECK_THROWS_AS(qram_config_from_json(R"({"n": 1, "memory": [0, 1]})"), ParseError);
  CHECK_THROWS_AS(qram_config_from_json(R"({"n": 1, "k": "x", "memory": [0, 1]})"), ParseError);
  CHECK_THROWS_AS(qram_config_from_json("{"), ParseError);
}

TEST_CASE("tree layout") {
  const TreeLayout t(3, 2);
  CHECK(t.node_count() == 7);
  CHECK(t.n_wires() == 3 + 2 + 14);
  CHECK(t.data_bus(1) == 4);
  CHECK(t.address_reg(0, 0) == 5);
  CHECK(t.data_reg(0, 0) == 6);
  CHECK(t.address_reg(2, 3) == 5 + 2 * 6);
  CHECK_THROWS_AS(TreeLayout(0, 1), std::invalid_argument);
}

TEST_CASE("ideal map") {
  const auto s = make_config(1, 2, {3, 1});
  CHECK(ideal_qram_output(s, 0, 0) == 3);
  CHECK(ideal_qram_output(s, 1, 1) == 0);
  std::mt19937_64 rng(2);
  const auto r = random_config(2, 2, rng);
  const TreeLayout layout(2, 2);
  const auto map = ideal_qram_unitary(r);
  CHECK(map.size() == 16);
  for (const auto& e : map) {
    const int total = layout.n_wires();
    std::uint64_t addr = 0, in = 0, out = 0;
    for (int l = 0; l < 2; ++l) addr = (addr << 1) | static_cast<std::uint64_t>(wire_bit(e.input, total, l));
    for (int b = 0; b < 2; ++b) {
      in = (in << 1) | static_cast<std::uint64_t>(wire_bit(e.input, total, 2 + b));
      out = (out << 1) | static_cast<std::uint64_t>(wire_bit(e.output, total, 2 + b));
    }
    CHECK(out == (in ^ r.memory[addr]));
    CHECK((e.input >> (total - 4)) == (e.input >> (total - 4)));
    CHECK((e.output & ((std::uint64_t{1} << (total - 4)) - 1)) == 0);
  }
}

TEST_CASE("(1,1) QRAM is exact for every memory") {
  for (std::uint64_t m0 = 0; m0 < 2; ++m0)
    for (std::uint64_t m1 = 0; m1 < 2; ++m1)
      for (bool ext : {true, false}) {
        const auto r = verify_qram(make_config(1, 1, {m0, m1}, ext));
        CHECK(exact(r));
        CHECK(r.inputs_checked == 4);
      }
}

TEST_CASE("all-zero memory leaves the bus unchanged") {
  for (int n = 1; n <= 2; ++n)
    for (int k = 1; k <= 3; ++k) CHECK(exact(verify_qram(make_config(n, k, std::vector<std::uint64_t>(1u << n, 0)))));
}

TEST_CASE("random memories, every option combination, both backends") {
  std::mt19937_64 rng(17);
  for (auto [n, k] : {std::pair{1, 2}, std::pair{2, 1}, std::pair{2, 2}, std::pair{2, 3}}) {
    for (int rep = 0; rep < 3; ++rep) {
      auto s = random_config(n, k, rng);
      for (bool ext : {true, false})
        for (bool pipe : {true, false}) {
          s.extensions = ext;
          s.pipeline = pipe;
          const auto build = build_qram(s);
          CHECK(exact(verify_qram(build, QramBackend::Statevector)));
          CHECK(exact(verify_qram(build, QramBackend::Sparse)));
        }
    }
  }
}

TEST_CASE("three address bits on the sparse backend") {
  std::mt19937_64 rng(23);
  for (int k = 1; k <= 2; ++k) CHECK(exact(verify_qram(random_config(3, k, rng))));
  CHECK_THROWS_AS(verify_qram(random_config(3, 4, rng)), std::invalid_argument);
}

TEST_CASE("extensions on and off act identically on basis states") {
  std::mt19937_64 rng(29);
  auto s = random_config(2, 2, rng);
  const auto on = build_qram(s);
  s.extensions = false;
  const auto off = build_qram(s);
  for (const auto& e : ideal_qram_unitary(s)) {
    const auto a = apply_sparse(on.circuit, {{e.input, Complex(1)}});
    const auto b = apply_sparse(off.circuit, {{e.input, Complex(1)}});
    REQUIRE(a.size() == 1);
    REQUIRE(b.size() == 1);
    CHECK(a.begin()->first == b.begin()->first);
    CHECK(std::abs(a.begin()->second - b.begin()->second) < 1e-12);
  }
}

TEST_CASE("a missing correction is detected") {
  auto build = build_qram(make_config(3, 1, {1, 0, 1, 1, 0, 0, 1, 0}));
  // Address bit a2 crosses 3 gates inward, 6 in total, so Z.
  CHECK(build.ledger.address_in[2] == 3);
  CHECK(build.ledger.address_power(2) == 2);
  CHECK(build.ledger.address_in[0] == 0);
  CHECK(build.ledger.address_in[1] == 2);
  const auto& last = build.circuit.gates().back();
  CHECK(last.kind == GateKind::Z);
  CHECK(last.wires == std::vector<int>{2});
  CHECK(exact(verify_qram(build)));
  Circuit trimmed(build.circuit.n_wires());
  for (std::size_t i = 0; i + 1 < build.circuit.size(); ++i) trimmed.add(build.circuit.gates()[i]);
  build.circuit = trimmed;
  const auto r = verify_qram(build);
  CHECK_FALSE(r.phase_free);
  CHECK(r.max_deviation > 1.0);
}

TEST_CASE("ledger without extensions is empty") {
  const auto build = build_qram(make_config(2, 2, {1, 2, 3, 0}, false));
  for (int v : build.ledger.address_in) CHECK(v == 0);
  for (int v : build.ledger.data_pre) CHECK(v == 0);
  const auto tally = tally_counts(build);
  CHECK(tally.ext1_savings == 0);
  CHECK(tally.ext2_savings == 0);
  CHECK(tally.qpu_cz == 0);
}

TEST_CASE("data ledger counts traversals per word") {
  const auto build = build_qram(make_config(3, 2, std::vector<std::uint64_t>(8, 1)));
  // n - 1 crossings each way; every crossing contributes one phase.
  CHECK(build.ledger.data_pre == std::vector<int>{2, 2});
  CHECK(build.ledger.data_post == std::vector<int>{2, 2});
}

TEST_CASE("bus CZs pair exactly the merged words") {
  const auto build = build_qram(make_config(3, 3, std::vector<std::uint64_t>(8, 5)));
  std::vector<std::pair<int, int>> from_schedule, from_circuit;
  for (const auto& step : build.schedule.steps)
    for (const auto& op : step.ops)
      if (op.kind == PipelineOpKind::Routing) from_schedule.emplace_back(op.words[1], op.words[0]);
  const auto& L = build.layout;
  for (const auto& g : build.circuit.gates())
    if (g.kind == GateKind::CZ && g.wires[0] >= L.data_bus(0) && g.wires[0] < L.data_bus(0) + L.k() &&
        g.wires[1] < L.data_bus(0) + L.k())
      from_circuit.emplace_back(g.wires[0] - L.n(), g.wires[1] - L.n());
  std::sort(from_schedule.begin(), from_schedule.end());
  std::sort(from_circuit.begin(), from_circuit.end());
  CHECK(from_schedule == from_circuit);
  CHECK(from_circuit.size() == 3);
}

TEST_CASE("iSWAP with S-dagger leaves exactly the partner CZ") {
  // SWAP = (-1)^{x y} iSWAP (S^dagger (x) S^dagger) on |x, y>.
  Matrix sdag2 = Matrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) sdag2(i, i) = std::pow(Complex(0, -1), (i >> 1) + (i & 1));
  const Matrix lhs = gate_matrix<double>(GateKind::CZ) * gate_matrix<double>(GateKind::iSWAP) * sdag2;
  CHECK((lhs - gate_matrix<double>(GateKind::SWAP)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("closed-form examples") {
  CHECK(closed_form_counts(2, 1).internal_swap_pairs == 2);
  CHECK(closed_form_counts(2, 1).root_swaps == 2);
  CHECK(closed_form_counts(3, 2).f == 1);
  CHECK(closed_form_counts(3, 2).fetch_routing_ops == 7);
  CHECK(closed_form_counts(2, 3).f == 2);
  CHECK(closed_form_counts(3, 3).qpu_cz == 3);
  CHECK(closed_form_counts(3, 3).ccz == 2);
  CHECK(closed_form_counts(1, 4).ccz == 0);
  CHECK(merged_routing_count(4, 2) == 1);
  CHECK(merged_routing_count(2, 5) == 1 + 3);
  CHECK_THROWS_AS(closed_form_counts(0, 1), std::invalid_argument);
}

TEST_CASE("fetch pairs match the per-layer sums for k >= n and k < n") {
  for (int n = 1; n <= 8; ++n)
    for (int k = 1; k <= 8; ++k) {
      const auto c = closed_form_counts(n, k);
      long alt = 0;
      if (k >= n) {
        for (int i = 1; i <= n - 1; ++i) alt += (1L << (n - i - 1)) * (2 * i + (k - i));
      } else {
        for (int i = 1; i <= k - 1; ++i) alt += (1L << (n - i - 1)) * (2 * i + (k - i));
        for (int j = k; j <= n - 1; ++j) alt += 2L * k * (1L << (n - j - 1));
      }
      CHECK(c.fetch_uni_pairs + c.fetch_bi_pairs == alt);
      long f = 0;
      for (int i = 1; i <= k - 1; ++i) f += std::min(i, n - 1);
      CHECK(c.f == f);
    }
}

TEST_CASE("built tallies match the closed forms per family") {
  for (int n = 1; n <= 4; ++n)
    for (int k = 1; k <= 4; ++k) {
      const auto s = make_config(n, k, std::vector<std::uint64_t>(1u << n, (1u << k) - 1));
      const auto build = build_qram(s);
      const auto res = count_gates(s, &build);
      REQUIRE(res.tallied.has_value());
      check_structural_counts(res.closed, *res.tallied);
      // The phase-query copy leaves no memory-dependent residue to compensate.
      CHECK(res.tallied->ccz == 0);
      CHECK(res.tallied->extra_memory_cells == 0);
    }
  CHECK(count_gates(make_config(1, 1, {0, 0})).agree());
}

TEST_CASE("report rendering") {
  const auto r = closed_form_counts(3, 2);
  const auto j = nlohmann::json::parse(to_json(r));
  CHECK(j["data_fetching"]["routing_ops"] == 7);
  CHECK(j["ccz"] == 1);
  const auto table = to_table(r);
  CHECK(table.find("Internal-SWAP") != std::string::npos);
  CHECK(table.find("Bidirectional Routing") != std::string::npos);
  CHECK(table.find("Address Setting & Uncomputing") != std::string::npos);
}

TEST_CASE("build size limits") {
  CHECK_THROWS_AS(build_qram(make_config(13, 1, std::vector<std::uint64_t>(1u << 13, 0))), std::invalid_argument);
  CHECK_NOTHROW(closed_form_counts(16, 4));
}
