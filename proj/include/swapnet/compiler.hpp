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

// SWAP-network compilation into the native {CZ, iSWAP} set.

#include "swapnet/circuit.hpp"

#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swapnet {

/// Ordered SWAPs over n wires.
struct SwapPath {
  int n = 0;
  std::vector<std::pair<int, int>> pairs;

  SwapPath() = default;
  /// Throws std::invalid_argument on out-of-range or repeated indices.
  SwapPath(int n, std::vector<std::pair<int, int>> pairs);

  std::size_t size() const { return pairs.size(); }
  bool operator==(const SwapPath&) const = default;
};

std::string to_json(const SwapPath& path, int indent = -1);
SwapPath swap_path_from_json(const std::string& text);

/// Arrangement after the path: result[w] is the initial wire whose content
/// sits on wire w.
std::vector<int> apply_path(const SwapPath& path);

/// SWAP network as a plain circuit of SWAP gates.
Circuit swap_circuit(const SwapPath& path);

/// Per-wire S-dagger counters. Counts are kept unreduced; reduction mod 4
/// happens only when the phase layer is emitted.
struct PhaseLedger {
  std::vector<int> counts;

  explicit PhaseLedger(int n = 0) : counts(n, 0) {}

  int power(int wire) const { return ((counts[wire] % 4) + 4) % 4; }
  int total() const;
  /// Gate realizing (S^dagger)^power: 1 -> Sdag, 2 -> Z, 3 -> S.
  static std::optional<GateKind> correction_gate(int power);
  /// Appends one correction gate per wire with a non-zero power.
  void emit_layer(Circuit& circuit) const;
  int layer_size() const;
};

struct CompileResult {
  Circuit circuit;
  PhaseLedger ledger;
};

/// Each SWAP becomes an iSCZ at the same position, followed by one layer of
/// single-qubit phase corrections.
CompileResult compile_iscz(const SwapPath& path);

/// Same network with every iSCZ split into iSWAP then CZ, for hardware
/// without the fused gate.
CompileResult compile_iswap_cz(const SwapPath& path);

/// SWAP -> CNOT(a,b) CNOT(b,a) CNOT(a,b).
Circuit compile_cnot_baseline(const SwapPath& path);

struct Ext1Result {
  Circuit circuit;
  PhaseLedger ledger;
  std::set<int> zero_after;  ///< wires holding |0> at the end
};

/// Zero-state tracking: a SWAP with exactly one |0> side becomes a bare
/// iSWAP, a SWAP between two |0> wires is dropped. The caller guarantees that
/// the wires in known_zero start in |0>.
Ext1Result compile_ext1(const SwapPath& path, const std::set<int>& known_zero);

enum class CzPolicy { Earliest, Latest };

/// A CZ between two logical values (named by their initial wire) still to be
/// placed. Time t means "after the first t iSWAPs of the path".
struct PendingCZ {
  std::size_t swap_index = 0;
  int value_a = 0;
  int value_b = 0;
  std::vector<int> legal_times;
  int time = -1;
  bool resolved() const { return time >= 0; }
};

class UnschedulableCz : public std::runtime_error {
 public:
  UnschedulableCz(std::size_t swap_index, const std::string& what)
      : std::runtime_error(what), swap_index_(swap_index) {}
  std::size_t swap_index() const { return swap_index_; }

 private:
  std::size_t swap_index_;
};

/// One PendingCZ per SWAP with every time step at which its two values sit
/// on coupled wires. Throws UnschedulableCz if a CZ has no legal time.
std::vector<PendingCZ> pending_czs(const SwapPath& path, const CouplingMap& map);

/// Resolves each pending CZ per policy. Earliest takes the first legal time,
/// Latest the last; CZs sharing a time step are emitted by lowest wire.
void schedule_czs(std::vector<PendingCZ>& pending, CzPolicy policy);

/// iSWAP network with the given resolved CZs interleaved and the phase layer
/// appended. Throws std::invalid_argument if a CZ is unresolved or placed at
/// an illegal time.
Circuit emit_ext2(const SwapPath& path, const std::vector<PendingCZ>& pending);

/// Deferred/advanced CZ scheduling over a coupling map.
Circuit compile_ext2(const SwapPath& path, const CouplingMap& map, CzPolicy policy);

/// Permutation unitary of the path built directly from index arithmetic.
Matrix reference_unitary(const SwapPath& path);

/// Max entrywise deviation between the path's permutation unitary and the
/// compiled circuit's unitary. With a non-empty zero set only the columns of
/// basis states that are |0> on those wires are compared.
double verify_equivalence(const SwapPath& reference, const Circuit& compiled,
                          const std::set<int>& zero_constraints = {});

}  // namespace swapnet
