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

#include "swapnet/compiler.hpp"

#include "swapnet/sim.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>

namespace swapnet {

using nlohmann::json;

SwapPath::SwapPath(int n_, std::vector<std::pair<int, int>> pairs_)
    : n(n_), pairs(std::move(pairs_)) {
  if (n < 0) throw std::invalid_argument("SwapPath: negative wire count");
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    auto [a, b] = pairs[i];
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("SwapPath: pair " + std::to_string(i) + " out of range");
    if (a == b) throw std::invalid_argument("SwapPath: pair " + std::to_string(i) + " repeats a wire");
  }
}

std::string to_json(const SwapPath& path, int indent) {
  json j;
  j["n"] = path.n;
  j["path"] = json::array();
  for (auto [a, b] : path.pairs) j["path"].push_back({a, b});
  return j.dump(indent);
}

SwapPath swap_path_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n")) throw ParseError("n: missing field");
  if (!j.contains("path")) throw ParseError("path: missing field");
  int n = 0;
  std::vector<std::pair<int, int>> pairs;
  try {
    n = j.at("n").get<int>();
  } catch (const json::exception&) {
    throw ParseError("n: wrong type");
  }
  const auto& arr = j.at("path");
  if (!arr.is_array()) throw ParseError("path: expected an array");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const auto& p = arr[i];
    if (!p.is_array() || p.size() != 2 || !p[0].is_number_integer() || !p[1].is_number_integer())
      throw ParseError("path[" + std::to_string(i) + "]: expected [int, int]");
    pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
  }
  try {
    return SwapPath(n, std::move(pairs));
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("path: ") + e.what());
  }
}

std::vector<int> apply_path(const SwapPath& path) {
  std::vector<int> arrangement(path.n);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  for (auto [a, b] : path.pairs) std::swap(arrangement[a], arrangement[b]);
  return arrangement;
}

Circuit swap_circuit(const SwapPath& path) {
  Circuit c(path.n);
  for (auto [a, b] : path.pairs) c.add(GateKind::SWAP, {a, b});
  return c;
}

int PhaseLedger::total() const { return std::accumulate(counts.begin(), counts.end(), 0); }

std::optional<GateKind> PhaseLedger::correction_gate(int power) {
  switch (((power % 4) + 4) % 4) {
    case 1:
      return GateKind::Sdag;
    case 2:
      return GateKind::Z;
    case 3:
      return GateKind::S;
    default:
      return std::nullopt;
  }
}

void PhaseLedger::emit_layer(Circuit& circuit) const {
  for (int w = 0; w < static_cast<int>(counts.size()); ++w)
    if (auto g = correction_gate(power(w))) circuit.add(*g, {w});
}

int PhaseLedger::layer_size() const {
  int size = 0;
  for (int w = 0; w < static_cast<int>(counts.size()); ++w) size += power(w) != 0;
  return size;
}

namespace {

// Both wires pick up one S-dagger, then the counters travel with the values.
void record_swap(PhaseLedger& ledger, int a, int b) {
  ++ledger.counts[a];
  ++ledger.counts[b];
  std::swap(ledger.counts[a], ledger.counts[b]);
}

CompileResult compile_phase_network(const SwapPath& path, bool fused) {
  CompileResult out{Circuit(path.n), PhaseLedger(path.n)};
  for (auto [a, b] : path.pairs) {
    if (fused) {
      out.circuit.add(GateKind::iSCZ, {a, b});
    } else {
      out.circuit.add(GateKind::iSWAP, {a, b});
      out.circuit.add(GateKind::CZ, {a, b});
    }
    record_swap(out.ledger, a, b);
  }
  out.ledger.emit_layer(out.circuit);
  return out;
}

}  // namespace

CompileResult compile_iscz(const SwapPath& path) { return compile_phase_network(path, true); }

CompileResult compile_iswap_cz(const SwapPath& path) { return compile_phase_network(path, false); }

Circuit compile_cnot_baseline(const SwapPath& path) {
  Circuit c(path.n);
  for (auto [a, b] : path.pairs) {
    c.add(GateKind::CNOT, {a, b});
    c.add(GateKind::CNOT, {b, a});
    c.add(GateKind::CNOT, {a, b});
  }
  return c;
}

Ext1Result compile_ext1(const SwapPath& path, const std::set<int>& known_zero) {
  for (int w : known_zero)
    if (w < 0 || w >= path.n) throw std::invalid_argument("compile_ext1: zero wire out of range");
  Ext1Result out{Circuit(path.n, known_zero), PhaseLedger(path.n), known_zero};
  auto& zeros = out.zero_after;
  for (auto [a, b] : path.pairs) {
    const bool za = zeros.count(a) > 0;
    const bool zb = zeros.count(b) > 0;
    if (za && zb) continue;
    if (!za && !zb) {
      out.circuit.add(GateKind::iSCZ, {a, b});
      record_swap(out.ledger, a, b);
      continue;
    }
    // iSWAP|x,0> = i^x |0,x>: only the data side gains a phase.
    const int data = za ? b : a;
    const int zero = za ? a : b;
    out.circuit.add(GateKind::iSWAP, {a, b});
    out.ledger.counts[zero] = out.ledger.counts[data] + 1;
    out.ledger.counts[data] = 0;
    zeros.erase(zero);
    zeros.insert(data);
  }
  out.ledger.emit_layer(out.circuit);
  return out;
}

std::vector<PendingCZ> pending_czs(const SwapPath& path, const CouplingMap& map) {
  if (map.n_wires() != path.n)
    throw std::invalid_argument("pending_czs: coupling map size differs from path");
  const std::size_t m = path.size();
  // position[t][v]: wire holding value v after t swaps.
  std::vector<std::vector<int>> position(m + 1, std::vector<int>(path.n));
  std::vector<int> arrangement(path.n);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  for (std::size_t t = 0; t <= m; ++t) {
    for (int w = 0; w < path.n; ++w) position[t][arrangement[w]] = w;
    if (t < m) std::swap(arrangement[path.pairs[t].first], arrangement[path.pairs[t].second]);
  }

  std::vector<PendingCZ> out;
  out.reserve(m);
  for (std::size_t s = 0; s < m; ++s) {
    PendingCZ cz;
    cz.swap_index = s;
    // Values entering swap s, named by their initial wire.
    cz.value_a = 0;
    cz.value_b = 0;
    for (int v = 0; v < path.n; ++v) {
      if (position[s][v] == path.pairs[s].first) cz.value_a = v;
      if (position[s][v] == path.pairs[s].second) cz.value_b = v;
    }
    for (std::size_t t = 0; t <= m; ++t)
      if (map.connected(position[t][cz.value_a], position[t][cz.value_b]))
        cz.legal_times.push_back(static_cast<int>(t));
    if (cz.legal_times.empty())
      throw UnschedulableCz(s, "CZ of swap " + std::to_string(s) +
                                   ": values never occupy coupled wires");
    out.push_back(std::move(cz));
  }
  return out;
}

void schedule_czs(std::vector<PendingCZ>& pending, CzPolicy policy) {
  for (auto& cz : pending) {
    if (cz.legal_times.empty())
      throw UnschedulableCz(cz.swap_index, "CZ of swap " + std::to_string(cz.swap_index) +
                                               " has no legal time");
    cz.time = policy == CzPolicy::Earliest ? cz.legal_times.front() : cz.legal_times.back();
  }
}

Circuit emit_ext2(const SwapPath& path, const std::vector<PendingCZ>& pending) {
  const int m = static_cast<int>(path.size());
  std::vector<std::vector<std::pair<int, int>>> at_time(m + 1);  // values per time
  for (const auto& cz : pending) {
    if (!cz.resolved())
      throw std::invalid_argument("emit_ext2: CZ of swap " + std::to_string(cz.swap_index) +
                                  " unresolved");
    if (std::find(cz.legal_times.begin(), cz.legal_times.end(), cz.time) == cz.legal_times.end())
      throw std::invalid_argument("emit_ext2: CZ of swap " + std::to_string(cz.swap_index) +
                                  " placed at illegal time " + std::to_string(cz.time));
    at_time[cz.time].emplace_back(cz.value_a, cz.value_b);
  }

  Circuit c(path.n);
  PhaseLedger ledger(path.n);
  std::vector<int> arrangement(path.n);
  std::iota(arrangement.begin(), arrangement.end(), 0);
  std::vector<int> where(path.n);

  auto flush = [&](int t) {
    for (int w = 0; w < path.n; ++w) where[arrangement[w]] = w;
    std::vector<std::pair<int, int>> wires;
    for (auto [va, vb] : at_time[t])
      wires.emplace_back(std::min(where[va], where[vb]), std::max(where[va], where[vb]));
    std::sort(wires.begin(), wires.end());
    for (auto [a, b] : wires) c.add(GateKind::CZ, {a, b});
  };

  for (int t = 0; t < m; ++t) {
    flush(t);
    auto [a, b] = path.pairs[t];
    c.add(GateKind::iSWAP, {a, b});
    record_swap(ledger, a, b);
    std::swap(arrangement[a], arrangement[b]);
  }
  flush(m);
  ledger.emit_layer(c);
  return c;
}

Circuit compile_ext2(const SwapPath& path, const CouplingMap& map, CzPolicy policy) {
  for (std::size_t i = 0; i < path.size(); ++i)
    if (!map.connected(path.pairs[i].first, path.pairs[i].second))
      throw UnschedulableCz(i, "swap " + std::to_string(i) + " is not on a coupling-map edge");
  auto pending = pending_czs(path, map);
  schedule_czs(pending, policy);
  return emit_ext2(path, pending);
}

Matrix reference_unitary(const SwapPath& path) {
  if (path.n > kUnitaryQubitCap)
    throw std::invalid_argument("reference_unitary: too many wires");
  const std::uint64_t dim = std::uint64_t{1} << path.n;
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::uint64_t in = 0; in < dim; ++in) {
    std::uint64_t out = in;
    for (auto [a, b] : path.pairs) {
      const int ba = wire_bit(out, path.n, a);
      const int bb = wire_bit(out, path.n, b);
      out = with_wire_bit(with_wire_bit(out, path.n, a, bb), path.n, b, ba);
    }
    u(static_cast<Eigen::Index>(out), static_cast<Eigen::Index>(in)) = 1.0;
  }
  return u;
}

double verify_equivalence(const SwapPath& reference, const Circuit& compiled,
                          const std::set<int>& zero_constraints) {
  if (compiled.n_wires() != reference.n)
    throw std::invalid_argument("verify_equivalence: wire counts differ");
  if (reference.n > kUnitaryQubitCap)
    throw std::invalid_argument("verify_equivalence: more than " +
                                std::to_string(kUnitaryQubitCap) + " wires");
  const Matrix expected = reference_unitary(reference);
  const int n = reference.n;
  double worst = 0.0;
  for (std::uint64_t col = 0; col < (std::uint64_t{1} << n); ++col) {
    bool admitted = true;
    for (int w : zero_constraints) admitted = admitted && wire_bit(col, n, w) == 0;
    if (!admitted) continue;
    const auto out = apply_circuit(QuantumState::basis(n, col), compiled).amplitudes();
    worst = std::max(worst, (out - expected.col(static_cast<Eigen::Index>(col))).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace swapnet
