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

#include "swapnet/gates.hpp"

#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace swapnet {

/// Thrown by every from_json-style reader; the message names the offending
/// field, e.g. "gates[2].kind: unknown gate 'foo'".
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered gate list over a fixed number of wires.
class Circuit {
 public:
  explicit Circuit(int n_wires = 0, std::set<int> known_zero = {});

  int n_wires() const { return n_wires_; }
  const std::vector<Gate>& gates() const { return gates_; }
  const std::set<int>& known_zero() const { return known_zero_; }
  std::size_t size() const { return gates_.size(); }
  bool empty() const { return gates_.empty(); }

  /// Throws std::out_of_range when an operand is not a wire of this circuit.
  Circuit& add(Gate gate);
  Circuit& add(GateKind kind, std::vector<int> wires, std::vector<double> params = {}) {
    return add(Gate(kind, std::move(wires), std::move(params)));
  }
  Circuit& append(const Circuit& other);

  void set_known_zero(std::set<int> wires);

  bool operator==(const Circuit&) const = default;

 private:
  int n_wires_ = 0;
  std::vector<Gate> gates_;
  std::set<int> known_zero_;
};

/// Undirected hardware connectivity.
class CouplingMap {
 public:
  CouplingMap(int n_wires, std::vector<std::pair<int, int>> edges);

  static CouplingMap line(int n);
  static CouplingMap ring(int n);
  static CouplingMap grid(int rows, int cols);
  static CouplingMap complete(int n);

  int n_wires() const { return n_wires_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }
  bool connected(int a, int b) const;

 private:
  int n_wires_;
  std::set<std::pair<int, int>> edges_;  // stored with first < second
};

struct Metrics {
  int total_gates = 0;
  int single_qubit_gates = 0;
  int two_qubit_gates = 0;
  int three_qubit_gates = 0;
  int depth = 0;
  int two_qubit_depth = 0;
};

/// ASAP layer index of every gate (0-based), in program order.
std::vector<int> asap_layers(const Circuit& circuit);

/// Gate counts plus greedy as-soon-as-possible depth; two_qubit_depth counts
/// the layers holding at least one multi-qubit gate.
Metrics depth(const Circuit& circuit);

struct Violation {
  std::size_t gate_index;
  std::pair<int, int> pair;
};

/// Every multi-qubit operand pair that is not an edge. Throws
/// std::invalid_argument if wire counts differ.
std::vector<Violation> validate(const Circuit& circuit, const CouplingMap& map);

std::string to_json(const Circuit& circuit, int indent = -1);
Circuit circuit_from_json(const std::string& text);

std::string to_json(const CouplingMap& map, int indent = -1);
CouplingMap coupling_map_from_json(const std::string& text);

}  // namespace swapnet
