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

#include "swapnet/circuit.hpp"

#include <json.hpp>

#include <algorithm>

namespace swapnet {

using nlohmann::json;

Circuit::Circuit(int n_wires, std::set<int> known_zero) : n_wires_(n_wires) {
  if (n_wires < 0) throw std::invalid_argument("Circuit: negative wire count");
  set_known_zero(std::move(known_zero));
}

Circuit& Circuit::add(Gate gate) {
  for (int w : gate.wires)
    if (w >= n_wires_)
      throw std::out_of_range(std::string(gate_name(gate.kind)) + ": wire " +
                              std::to_string(w) + " outside circuit of " +
                              std::to_string(n_wires_) + " wires");
  gates_.push_back(std::move(gate));
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  if (other.n_wires_ > n_wires_)
    throw std::invalid_argument("Circuit::append: wider circuit");
  for (const auto& g : other.gates_) add(g);
  return *this;
}

void Circuit::set_known_zero(std::set<int> wires) {
  for (int w : wires)
    if (w < 0 || w >= n_wires_)
      throw std::out_of_range("known_zero wire " + std::to_string(w) + " out of range");
  known_zero_ = std::move(wires);
}

CouplingMap::CouplingMap(int n_wires, std::vector<std::pair<int, int>> edges)
    : n_wires_(n_wires) {
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n_wires || b >= n_wires)
      throw std::invalid_argument("CouplingMap: edge references missing wire");
    if (a == b) throw std::invalid_argument("CouplingMap: self-loop");
    edges_.insert({std::min(a, b), std::max(a, b)});
  }
}

CouplingMap CouplingMap::line(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return {n, e};
}

CouplingMap CouplingMap::ring(int n) {
  auto map = line(n);
  if (n > 2) map.edges_.insert({0, n - 1});
  return map;
}

CouplingMap CouplingMap::grid(int rows, int cols) {
  std::vector<std::pair<int, int>> e;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) {
      const int w = r * cols + c;
      if (c + 1 < cols) e.emplace_back(w, w + 1);
      if (r + 1 < rows) e.emplace_back(w, w + cols);
    }
  return {rows * cols, e};
}

CouplingMap CouplingMap::complete(int n) {
  std::vector<std::pair<int, int>> e;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) e.emplace_back(a, b);
  return {n, e};
}

bool CouplingMap::connected(int a, int b) const {
  return edges_.count({std::min(a, b), std::max(a, b)}) > 0;
}

std::vector<int> asap_layers(const Circuit& circuit) {
  std::vector<int> frontier(circuit.n_wires(), 0);
  std::vector<int> layers;
  layers.reserve(circuit.size());
  for (const auto& g : circuit.gates()) {
    int layer = 0;
    for (int w : g.wires) layer = std::max(layer, frontier[w]);
    for (int w : g.wires) frontier[w] = layer + 1;
    layers.push_back(layer);
  }
  return layers;
}

Metrics depth(const Circuit& circuit) {
  Metrics m;
  const auto layers = asap_layers(circuit);
  std::set<int> multi_layers;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const int a = circuit.gates()[i].arity();
    ++m.total_gates;
    if (a == 1) ++m.single_qubit_gates;
    if (a == 2) ++m.two_qubit_gates;
    if (a == 3) ++m.three_qubit_gates;
    if (a >= 2) multi_layers.insert(layers[i]);
    m.depth = std::max(m.depth, layers[i] + 1);
  }
  m.two_qubit_depth = static_cast<int>(multi_layers.size());
  return m;
}

std::vector<Violation> validate(const Circuit& circuit, const CouplingMap& map) {
  if (circuit.n_wires() != map.n_wires())
    throw std::invalid_argument("validate: circuit has " + std::to_string(circuit.n_wires()) +
                                " wires, coupling map has " +
                                std::to_string(map.n_wires()));
  std::vector<Violation> out;
  for (std::size_t i = 0; i < circuit.size(); ++i) {
    const auto& w = circuit.gates()[i].wires;
    for (std::size_t a = 0; a < w.size(); ++a)
      for (std::size_t b = a + 1; b < w.size(); ++b)
        if (!map.connected(w[a], w[b])) out.push_back({i, {w[a], w[b]}});
  }
  return out;
}

namespace {

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& obj, const std::string& key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + key + ": missing field");
  try {
    return it->get<T>();
  } catch (const json::exception&) {
    throw ParseError(where + key + ": wrong type");
  }
}

}  // namespace

std::string to_json(const Circuit& circuit, int indent) {
  json j;
  j["n"] = circuit.n_wires();
  j["known_zero"] = std::vector<int>(circuit.known_zero().begin(), circuit.known_zero().end());
  j["gates"] = json::array();
  for (const auto& g : circuit.gates())
    j["gates"].push_back({{"kind", gate_name(g.kind)}, {"wires", g.wires}, {"params", g.params}});
  return j.dump(indent);
}

Circuit circuit_from_json(const std::string& text) {
  const json j = parse_text(text);
  const int n = field<int>(j, "n", "");
  if (n < 0) throw ParseError("n: negative wire count");
  std::set<int> zeros;
  if (j.contains("known_zero")) {
    for (int w : field<std::vector<int>>(j, "known_zero", ""))
      if (w < 0 || w >= n) throw ParseError("known_zero: wire " + std::to_string(w) + " out of range");
      else zeros.insert(w);
  }
  Circuit c(n, zeros);
  const auto gates = field<json>(j, "gates", "");
  if (!gates.is_array()) throw ParseError("gates: expected an array");
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const std::string where = "gates[" + std::to_string(i) + "].";
    const auto name = field<std::string>(gates[i], "kind", where);
    const auto kind = gate_kind_from_name(name);
    if (!kind) throw ParseError(where + "kind: unknown gate '" + name + "'");
    const auto wires = field<std::vector<int>>(gates[i], "wires", where);
    std::vector<double> params;
    if (gates[i].contains("params")) params = field<std::vector<double>>(gates[i], "params", where);
    try {
      c.add(Gate(*kind, wires, params));
    } catch (const std::exception& e) {
      throw ParseError(where.substr(0, where.size() - 1) + ": " + e.what());
    }
  }
  return c;
}

std::string to_json(const CouplingMap& map, int indent) {
  json j;
  j["n"] = map.n_wires();
  j["edges"] = json::array();
  for (auto [a, b] : map.edges()) j["edges"].push_back({a, b});
  return j.dump(indent);
}

CouplingMap coupling_map_from_json(const std::string& text) {
  const json j = parse_text(text);
  const int n = field<int>(j, "n", "");
  const auto edges = field<std::vector<std::pair<int, int>>>(j, "edges", "");
  try {
    return CouplingMap(n, edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("edges: ") + e.what());
  }
}

}  // namespace swapnet
