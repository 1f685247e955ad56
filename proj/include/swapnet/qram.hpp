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

// Bucket-brigade (n, k)-QRAM with qubit address and data registers per node.
//
// Wire layout: address bus 0..n-1 (wire 0 holds the most significant address
// bit), data bus n..n+k-1 (first wire = most significant word bit), then one
// (address, data) register pair per tree node in breadth-first order.

#include "swapnet/circuit.hpp"
#include "swapnet/schedule.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace swapnet {

struct QramConfig {
  int n = 1;
  int k = 1;
  std::vector<std::uint64_t> memory;  ///< 2^n words of k bits
  bool extensions = true;             ///< iSWAP-family substitutions
  bool pipeline = true;

  /// Throws std::invalid_argument.
  void validate() const;
  std::uint64_t address_count() const { return std::uint64_t{1} << n; }
  /// Bit b of word at `address`, b = 0 being the most significant.
  int word_bit(std::uint64_t address, int b) const;
};

std::string to_json(const QramConfig& config, int indent = -1);
QramConfig qram_config_from_json(const std::string& text);

class TreeLayout {
 public:
  TreeLayout(int n, int k);

  int n() const { return n_; }
  int k() const { return k_; }
  int n_wires() const { return n_ + k_ + 2 * node_count(); }
  int node_count() const { return (1 << n_) - 1; }

  int address_bus(int bit) const { return bit; }
  int data_bus(int bit) const { return n_ + bit; }
  int node_index(int layer, int m) const { return (1 << layer) - 1 + m; }
  int address_reg(int layer, int m) const { return n_ + k_ + 2 * node_index(layer, m); }
  int data_reg(int layer, int m) const { return address_reg(layer, m) + 1; }

 private:
  int n_;
  int k_;
};

enum class QramPhase { AddressSetting, DataFetching, Uncomputing };

enum class QramFamily {
  BusLoad,       ///< plain SWAP between a bus wire and the root data register
  RootSwap,      ///< plain SWAP between the root data and address registers
  InternalSwap,  ///< per parent: (SWAP, C-SWAP)
  UniRouting,    ///< per node: (C-SWAP, SWAP)
  BiRouting,     ///< per node: (C-SWAP, C-SWAP)
  Memory,        ///< phase query at the leaves
  BasisChange,   ///< Hadamard layer on the data bus around data fetching
  QpuCz,         ///< CZ between two data-bus wires
  Correction,    ///< single-qubit phase correction on a bus wire
};

/// One layer-level operation of the build.
struct QramOpRecord {
  QramPhase phase;
  QramFamily family;
  int layer = -1;        ///< boundary or layer index where meaningful
  int pairs = 0;         ///< gate pairs (or single gates for plain families)
  bool substituted = false;  ///< realized with the iSWAP family
};

/// Traversal counts behind every bus correction. Powers are counts mod 4.
struct PhaseCorrectionLedger {
  std::vector<int> address_in;   ///< traversals of address bit l into the tree
  std::vector<int> address_out;  ///< traversals on the way back
  std::vector<int> data_pre;     ///< traversals of word bit w before the copy
  std::vector<int> data_post;    ///< traversals after the copy

  int address_power(int bit) const { return (address_in[bit] + address_out[bit]) % 4; }
  int pre_power(int w) const { return data_pre[w] % 4; }
  int post_power(int w) const { return data_post[w] % 4; }
};

struct QramBuild {
  QramConfig config;
  TreeLayout layout;
  Circuit circuit;
  PipelineSchedule schedule;
  std::vector<QramOpRecord> ops;
  PhaseCorrectionLedger ledger;
};

/// Full three-stage circuit: address setting, data fetching, uncomputing.
QramBuild build_qram(const QramConfig& config);
inline Circuit build_qram_circuit(const QramConfig& config) { return build_qram(config).circuit; }

/// Data word after |i>|z> -> |i>|z xor d_i>.
std::uint64_t ideal_qram_output(const QramConfig& config, std::uint64_t address, std::uint64_t z);

/// Basis index over the full layout for address, data word and zero ancillas.
std::uint64_t qram_basis_index(const TreeLayout& layout, std::uint64_t address, std::uint64_t z);

struct QramMapEntry {
  std::uint64_t input;
  std::uint64_t output;
};
/// Ideal action on every |i>|z>|0...0> as full-layout basis indices.
std::vector<QramMapEntry> ideal_qram_unitary(const QramConfig& config);

struct GateCountReport {
  int n = 0;
  int k = 0;
  long f = 0;                      ///< merged routing pairs in data fetching
  long internal_swap_pairs = 0;    ///< setting + uncomputing, excluding the root
  long root_swaps = 0;
  long setting_routing_pairs = 0;  ///< unidirectional, setting + uncomputing
  long fetch_routing_ops = 0;      ///< layer-level Routing operations
  long fetch_uni_pairs = 0;
  long fetch_bi_pairs = 0;
  long ext1_savings = 0;
  long ext2_savings = 0;
  long qpu_cz = 0;
  long ccz = 0;
  long extra_memory_cells = 0;     ///< per address

  bool operator==(const GateCountReport&) const = default;
};

/// f(n, k): k(k-1)/2 for n >= k, else n(n-1)/2 + (k-n)(n-1).
long merged_routing_count(int n, int k);
/// Closed-form evaluation for a pipelined build with extensions.
GateCountReport closed_form_counts(int n, int k);
/// Tally of a concrete build.
GateCountReport tally_counts(const QramBuild& build);

struct CountResult {
  GateCountReport closed;
  std::optional<GateCountReport> tallied;
  bool agree() const { return !tallied || *tallied == closed; }
};

/// Closed forms, plus the tally of `build` when given.
CountResult count_gates(const QramConfig& config, const QramBuild* build = nullptr);

std::string to_json(const GateCountReport& report, int indent = -1);
/// Aligned table: Internal-SWAP | Unidirectional Routing | Bidirectional Routing.
std::string to_table(const GateCountReport& report);

inline constexpr int kQramVerifyWireCap = 20;

struct QramVerifyResult {
  double max_deviation = 0.0;
  std::size_t inputs_checked = 0;
  bool ancillas_restored = true;
  bool phase_free = true;
};

enum class QramBackend { Auto, Statevector, Sparse };

/// Runs every |i>|z> with zeroed ancillas through the built circuit and
/// compares with the ideal map, phase included. Throws std::invalid_argument
/// above kQramVerifyWireCap wires.
QramVerifyResult verify_qram(const QramConfig& config, QramBackend backend = QramBackend::Auto);
QramVerifyResult verify_qram(const QramBuild& build, QramBackend backend = QramBackend::Auto);

}  // namespace swapnet
