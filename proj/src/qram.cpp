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

#include "swapnet/compiler.hpp"
#include "swapnet/sim.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace swapnet {

using nlohmann::json;

void QramConfig::validate() const {
  if (n < 1 || n > 16) throw std::invalid_argument("QramConfig: n must lie in [1, 16]");
  if (k < 1 || k > 62) throw std::invalid_argument("QramConfig: k must lie in [1, 62]");
  if (memory.size() != address_count())
    throw std::invalid_argument("QramConfig: memory holds " + std::to_string(memory.size()) +
                                " words, expected " + std::to_string(address_count()));
  for (std::size_t i = 0; i < memory.size(); ++i)
    if (memory[i] >> k)
      throw std::invalid_argument("QramConfig: memory[" + std::to_string(i) + "] exceeds " +
                                  std::to_string(k) + " bits");
}

int QramConfig::word_bit(std::uint64_t address, int b) const {
  return static_cast<int>((memory.at(address) >> (k - 1 - b)) & 1u);
}

std::string to_json(const QramConfig& config, int indent) {
  json j;
  j["n"] = config.n;
  j["k"] = config.k;
  j["memory"] = config.memory;
  j["extensions"] = config.extensions;
  j["pipeline"] = config.pipeline;
  return j.dump(indent);
}

QramConfig qram_config_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) throw ParseError("expected an object");
  QramConfig config;
  auto get = [&](const char* key, auto& out, bool required) {
    if (!j.contains(key)) {
      if (required) throw ParseError(std::string(key) + ": missing field");
      return;
    }
    try {
      j.at(key).get_to(out);
    } catch (const json::exception&) {
      throw ParseError(std::string(key) + ": wrong type");
    }
  };
  get("n", config.n, true);
  get("k", config.k, true);
  get("memory", config.memory, true);
  get("extensions", config.extensions, false);
  get("pipeline", config.pipeline, false);
  try {
    config.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return config;
}

TreeLayout::TreeLayout(int n, int k) : n_(n), k_(k) {
  if (n < 1 || k < 1) throw std::invalid_argument("TreeLayout: n and k must be >= 1");
}

namespace {

class Builder {
 public:
  explicit Builder(const QramConfig& config)
      : config_(config), layout_(config.n, config.k), circuit_(layout_.n_wires()), ext_(config.extensions) {
    ledger_.address_in.assign(config.n, 0);
    ledger_.address_out.assign(config.n, 0);
    ledger_.data_pre.assign(config.k, 0);
    ledger_.data_post.assign(config.k, 0);
  }

  QramBuild build() {
    schedule_ = config_.pipeline ? pipeline_schedule(config_.n, config_.k) : sequential_schedule(config_.n, config_.k);

    const std::size_t setting_begin = circuit_.size();
    const std::size_t ops_begin = ops_.size();
    set_address();
    const std::size_t setting_end = circuit_.size();
    const std::size_t ops_end = ops_.size();

    fetch();

    // Uncomputing mirrors the setting stage gate by gate. Every gate used
    // there permutes like a SWAP, so the reversed list undoes the routing;
    // iSWAP-family phases keep accumulating and are counted in address_out.
    std::vector<Gate> setting(circuit_.gates().begin() + setting_begin,
                              circuit_.gates().begin() + setting_end);
    for (auto it = setting.rbegin(); it != setting.rend(); ++it) circuit_.add(*it);
    for (std::size_t i = ops_end; i > ops_begin; --i) {
      QramOpRecord rec = ops_[i - 1];
      rec.phase = QramPhase::Uncomputing;
      ops_.push_back(rec);
    }
    ledger_.address_out = ledger_.address_in;
    for (int l = 0; l < config_.n; ++l)
      correct(layout_.address_bus(l), ledger_.address_power(l), QramPhase::Uncomputing);

    return QramBuild{config_, layout_, std::move(circuit_), std::move(schedule_), std::move(ops_),
                     std::move(ledger_)};
  }

 private:
  int A(int l, int m) const { return layout_.address_reg(l, m); }
  int D(int l, int m) const { return layout_.data_reg(l, m); }

  void swap_like(int a, int b) { circuit_.add(ext_ ? GateKind::iSWAP : GateKind::SWAP, {a, b}); }
  void cswap_like(int c, int a, int b) {
    circuit_.add(ext_ ? GateKind::CiSWAP : GateKind::CSWAP, {c, a, b});
  }
  void record(QramPhase phase, QramFamily family, int layer, int pairs, bool substituted) {
    ops_.push_back({phase, family, layer, pairs, substituted});
  }

  // Routing at boundary (j, j+1): the value on the active node's data
  // register moves to the child picked by its address register. Exactly one
  // of the two gates moves it; the other acts on |00>.
  void route_down(int j, QramPhase phase) {
    for (int x = 0; x < (1 << j); ++x) {
      cswap_like(A(j, x), D(j, x), D(j + 1, 2 * x + 1));
      swap_like(D(j, x), D(j + 1, 2 * x));
    }
    record(phase, QramFamily::UniRouting, j, 1 << j, ext_);
  }

  void route_up(int j, QramPhase phase) {
    for (int x = 0; x < (1 << j); ++x) {
      swap_like(D(j, x), D(j + 1, 2 * x));
      cswap_like(A(j, x), D(j, x), D(j + 1, 2 * x + 1));
    }
    record(phase, QramFamily::UniRouting, j, 1 << j, ext_);
  }

  // Exchange between the parent and the selected child when both hold data.
  void route_both(int j) {
    for (int x = 0; x < (1 << j); ++x) {
      cswap_like(A(j, x), D(j, x), D(j + 1, 2 * x + 1));
      circuit_.add(GateKind::X, {A(j, x)});
      cswap_like(A(j, x), D(j, x), D(j + 1, 2 * x));
      circuit_.add(GateKind::X, {A(j, x)});
    }
    record(QramPhase::DataFetching, QramFamily::BiRouting, j, 1 << j, ext_);
  }

  // Moves the arriving address bit from the selected child's data register
  // into its address register. The unselected child holds |00>.
  void internal_swap(int l) {
    for (int p = 0; p < (1 << (l - 1)); ++p) {
      swap_like(A(l, 2 * p), D(l, 2 * p));
      cswap_like(A(l - 1, p), A(l, 2 * p + 1), D(l, 2 * p + 1));
    }
    record(QramPhase::AddressSetting, QramFamily::InternalSwap, l, 1 << (l - 1), ext_);
  }

  void bus_swap(int bus, QramPhase phase) {
    circuit_.add(GateKind::SWAP, {bus, D(0, 0)});
    record(phase, QramFamily::BusLoad, 0, 1, false);
  }

  void correct(int wire, int power, QramPhase phase) {
    if (auto g = PhaseLedger::correction_gate(power)) {
      circuit_.add(*g, {wire});
      record(phase, QramFamily::Correction, -1, 1, false);
    }
  }

  void set_address() {
    const auto phase = QramPhase::AddressSetting;
    for (int l = 0; l < config_.n; ++l) {
      bus_swap(layout_.address_bus(l), phase);
      for (int j = 0; j < l; ++j) {
        route_down(j, phase);
        if (ext_) ++ledger_.address_in[l];
      }
      if (l == 0) {
        circuit_.add(GateKind::SWAP, {D(0, 0), A(0, 0)});
        record(phase, QramFamily::RootSwap, 0, 1, false);
      } else {
        internal_swap(l);
        if (ext_) ++ledger_.address_in[l];
      }
    }
  }

  // Phase query at the leaves: (-1)^{c * bit(cell)} on the routed value c,
  // selecting the cell with the leaf's address register. Idle leaves hold
  // |0> and pick up no phase.
  void memory_step(int word) {
    const int leaf = config_.n - 1;
    const auto before = circuit_.size();
    for (int m = 0; m < (1 << leaf); ++m) {
      const int left = config_.word_bit(2 * m, word);
      const int right = config_.word_bit(2 * m + 1, word);
      if (left) circuit_.add(GateKind::Z, {D(leaf, m)});
      if (left != right) circuit_.add(GateKind::CZ, {A(leaf, m), D(leaf, m)});
    }
    record(QramPhase::DataFetching, QramFamily::Memory, leaf, static_cast<int>(circuit_.size() - before),
           false);
  }

  void basis_change() {
    for (int w = 0; w < config_.k; ++w) circuit_.add(GateKind::H, {layout_.data_bus(w)});
    record(QramPhase::DataFetching, QramFamily::BasisChange, -1, config_.k, false);
  }

  void fetch() {
    const auto phase = QramPhase::DataFetching;
    basis_change();
    if (ext_) {
      for (const auto& step : schedule_.steps)
        for (const auto& op : step.ops) {
          if (op.kind == PipelineOpKind::RouteDown) ++ledger_.data_pre[op.words[0]];
          if (op.kind == PipelineOpKind::RouteUp) ++ledger_.data_post[op.words[0]];
          if (op.kind == PipelineOpKind::Routing) {
            ++ledger_.data_post[op.words[0]];
            ++ledger_.data_pre[op.words[1]];
          }
        }
      // Deferred CZ halves of the bidirectional exchanges. Routed values only
      // pick up phases, so the pair is the two bus values themselves.
      for (const auto& step : schedule_.steps)
        for (const auto& op : step.ops)
          if (op.kind == PipelineOpKind::Routing) {
            circuit_.add(GateKind::CZ, {layout_.data_bus(op.words[1]), layout_.data_bus(op.words[0])});
            record(phase, QramFamily::QpuCz, op.layer, 1, true);
          }
      for (int w = 0; w < config_.k; ++w) correct(layout_.data_bus(w), ledger_.pre_power(w), phase);
    }

    for (const auto& step : schedule_.steps)
      for (const auto& op : step.ops) switch (op.kind) {
          case PipelineOpKind::Load:
          case PipelineOpKind::Unload:
            bus_swap(layout_.data_bus(op.words[0]), phase);
            break;
          case PipelineOpKind::BusExchange:
            bus_swap(layout_.data_bus(op.words[0]), phase);
            bus_swap(layout_.data_bus(op.words[1]), phase);
            break;
          case PipelineOpKind::RouteDown:
            route_down(op.layer, phase);
            break;
          case PipelineOpKind::RouteUp:
            route_up(op.layer, phase);
            break;
          case PipelineOpKind::Routing:
            route_both(op.layer);
            break;
          case PipelineOpKind::Memory:
            memory_step(op.words[0]);
            break;
        }

    if (ext_)
      for (int w = 0; w < config_.k; ++w) correct(layout_.data_bus(w), ledger_.post_power(w), phase);
    basis_change();
  }

  const QramConfig& config_;
  TreeLayout layout_;
  Circuit circuit_;
  bool ext_;
  PipelineSchedule schedule_;
  std::vector<QramOpRecord> ops_;
  PhaseCorrectionLedger ledger_;
};

}  // namespace

QramBuild build_qram(const QramConfig& config) {
  config.validate();
  if (config.n > 12) throw std::invalid_argument("build_qram: n > 12 is supported for counting only");
  return Builder(config).build();
}

std::uint64_t ideal_qram_output(const QramConfig& config, std::uint64_t address, std::uint64_t z) {
  return z ^ config.memory.at(address);
}

std::uint64_t qram_basis_index(const TreeLayout& layout, std::uint64_t address, std::uint64_t z) {
  const int total = layout.n_wires();
  std::uint64_t index = 0;
  for (int l = 0; l < layout.n(); ++l)
    index = with_wire_bit(index, total, layout.address_bus(l),
                          static_cast<int>((address >> (layout.n() - 1 - l)) & 1u));
  for (int b = 0; b < layout.k(); ++b)
    index = with_wire_bit(index, total, layout.data_bus(b),
                          static_cast<int>((z >> (layout.k() - 1 - b)) & 1u));
  return index;
}

std::vector<QramMapEntry> ideal_qram_unitary(const QramConfig& config) {
  config.validate();
  const TreeLayout layout(config.n, config.k);
  if (layout.n_wires() > 64) throw std::invalid_argument("ideal_qram_unitary: more than 64 wires");
  std::vector<QramMapEntry> out;
  for (std::uint64_t i = 0; i < config.address_count(); ++i)
    for (std::uint64_t z = 0; z < (std::uint64_t{1} << config.k); ++z)
      out.push_back({qram_basis_index(layout, i, z),
                     qram_basis_index(layout, i, ideal_qram_output(config, i, z))});
  return out;
}

long merged_routing_count(int n, int k) {
  if (n >= k) return static_cast<long>(k) * (k - 1) / 2;
  return static_cast<long>(n) * (n - 1) / 2 + static_cast<long>(k - n) * (n - 1);
}

GateCountReport closed_form_counts(int n, int k) {
  if (n < 1 || k < 1) throw std::invalid_argument("closed_form_counts: n, k must be >= 1");
  GateCountReport r;
  r.n = n;
  r.k = k;
  const long pow_n = 1L << n;
  r.f = merged_routing_count(n, k);
  r.internal_swap_pairs = pow_n - 2;
  r.root_swaps = 2;
  r.setting_routing_pairs = 2 * (pow_n - n - 1);
  r.fetch_routing_ops = 2L * (n - 1) * k - r.f;
  for (int i = 1; i <= n - 1; ++i) {
    r.fetch_uni_pairs += (1L << (n - i)) * std::min(i, k);
    r.fetch_bi_pairs += (1L << (n - i - 1)) * (k - std::min(i, k));
  }
  r.ext1_savings = 3 * pow_n - 2L * n - 4 + r.fetch_uni_pairs;
  r.ext2_savings = r.fetch_bi_pairs;
  for (int i = 0; i <= k - 1; ++i) r.qpu_cz += std::min(i, n - 1);
  // One compensated memory step per word that meets an earlier word; a
  // single-node tree (n = 1) has no bidirectional routing at all.
  r.ccz = n >= 2 ? k - 1 : 0;
  r.extra_memory_cells = r.ccz;
  return r;
}

GateCountReport tally_counts(const QramBuild& build) {
  GateCountReport r;
  r.n = build.config.n;
  r.k = build.config.k;
  r.f = build.schedule.merged_pairs();
  for (const auto& op : build.ops) {
    const bool fetching = op.phase == QramPhase::DataFetching;
    switch (op.family) {
      case QramFamily::InternalSwap:
        r.internal_swap_pairs += op.pairs;
        if (op.substituted) r.ext1_savings += op.pairs;
        break;
      case QramFamily::RootSwap:
        r.root_swaps += op.pairs;
        break;
      case QramFamily::UniRouting:
        if (fetching) {
          r.fetch_uni_pairs += op.pairs;
          ++r.fetch_routing_ops;
        } else {
          r.setting_routing_pairs += op.pairs;
        }
        if (op.substituted) r.ext1_savings += op.pairs;
        break;
      case QramFamily::BiRouting:
        r.fetch_bi_pairs += op.pairs;
        ++r.fetch_routing_ops;
        if (op.substituted) r.ext2_savings += op.pairs;
        break;
      case QramFamily::QpuCz:
        ++r.qpu_cz;
        break;
      default:
        break;
    }
  }
  return r;
}

CountResult count_gates(const QramConfig& config, const QramBuild* build) {
  CountResult out{closed_form_counts(config.n, config.k), std::nullopt};
  if (build) out.tallied = tally_counts(*build);
  return out;
}

std::string to_json(const GateCountReport& r, int indent) {
  json j;
  j["n"] = r.n;
  j["k"] = r.k;
  j["f"] = r.f;
  j["address_setting_uncomputing"] = {{"internal_swap_pairs", r.internal_swap_pairs},
                                      {"root_swaps", r.root_swaps},
                                      {"unidirectional_routing_pairs", r.setting_routing_pairs}};
  j["data_fetching"] = {{"routing_ops", r.fetch_routing_ops},
                        {"unidirectional_routing_pairs", r.fetch_uni_pairs},
                        {"bidirectional_routing_pairs", r.fetch_bi_pairs}};
  j["extension1_savings"] = r.ext1_savings;
  j["extension2_savings"] = r.ext2_savings;
  j["cz_on_qpu"] = r.qpu_cz;
  j["ccz"] = r.ccz;
  j["extra_memory_cells"] = r.extra_memory_cells;
  return j.dump(indent);
}

std::string to_table(const GateCountReport& r) {
  std::ostringstream os;
  auto row = [&](const std::string& a, const std::string& b, const std::string& c, const std::string& d) {
    os << std::left << std::setw(32) << a << std::setw(16) << b << std::setw(26) << c << d << '\n';
  };
  os << "(n, k) = (" << r.n << ", " << r.k << ")\n";
  row("", "Internal-SWAP", "Unidirectional Routing", "Bidirectional Routing");
  row("Address Setting & Uncomputing", std::to_string(r.internal_swap_pairs),
      std::to_string(r.setting_routing_pairs), "-");
  row("Data Loading", "-", std::to_string(r.fetch_uni_pairs), std::to_string(r.fetch_bi_pairs));
  os << "root SWAPs: " << r.root_swaps << "  fetch Routing ops: " << r.fetch_routing_ops
     << "  f(n,k): " << r.f << '\n'
     << "Extension 1 saves: " << r.ext1_savings << "  Extension 2 saves: " << r.ext2_savings << '\n'
     << "CZ on QPU: " << r.qpu_cz << "  CCZ: " << r.ccz
     << "  extra memory cells per address: " << r.extra_memory_cells << '\n';
  return os.str();
}

QramVerifyResult verify_qram(const QramConfig& config, QramBackend backend) {
  config.validate();
  const TreeLayout layout(config.n, config.k);
  if (layout.n_wires() > kQramVerifyWireCap)
    throw std::invalid_argument("verify_qram: " + std::to_string(layout.n_wires()) +
                                " wires exceeds cap of " + std::to_string(kQramVerifyWireCap));
  return verify_qram(build_qram(config), backend);
}

QramVerifyResult verify_qram(const QramBuild& build, QramBackend backend) {
  const auto& layout = build.layout;
  const int total = layout.n_wires();
  if (total > kQramVerifyWireCap)
    throw std::invalid_argument("verify_qram: " + std::to_string(total) + " wires exceeds cap of " +
                                std::to_string(kQramVerifyWireCap));
  if (backend == QramBackend::Auto) backend = total <= 12 ? QramBackend::Statevector : QramBackend::Sparse;

  std::uint64_t ancilla_mask = 0;
  for (int w = layout.n() + layout.k(); w < total; ++w) ancilla_mask |= std::uint64_t{1} << (total - 1 - w);

  QramVerifyResult res;
  for (const auto& entry : ideal_qram_unitary(build.config)) {
    ++res.inputs_checked;
    if (backend == QramBackend::Sparse) {
      const auto out = apply_sparse(build.circuit, SparseState{{entry.input, Complex(1.0)}});
      double dev = 0.0;
      bool hit = false;
      for (const auto& [index, amp] : out) {
        if (index == entry.output) {
          hit = true;
          dev = std::max(dev, std::abs(amp - Complex(1.0)));
          if (std::abs(amp - Complex(1.0)) > 1e-9) res.phase_free = false;
        } else {
          dev = std::max(dev, std::abs(amp));
          if (index & ancilla_mask) res.ancillas_restored = false;
        }
      }
      if (!hit) {
        dev = std::max(dev, 1.0);
        res.phase_free = false;
      }
      res.max_deviation = std::max(res.max_deviation, dev);
      continue;
    }
    const auto out = apply_circuit(QuantumState::basis(total, entry.input), build.circuit).amplitudes();
    Vector expected = Vector::Zero(out.size());
    expected[static_cast<Eigen::Index>(entry.output)] = 1.0;
    res.max_deviation = std::max(res.max_deviation, (out - expected).cwiseAbs().maxCoeff());
    double leaked = 0.0;
    for (Eigen::Index i = 0; i < out.size(); ++i)
      if (static_cast<std::uint64_t>(i) & ancilla_mask) leaked += std::norm(out[i]);
    if (leaked > 1e-18) res.ancillas_restored = false;
    if (std::abs(out[static_cast<Eigen::Index>(entry.output)] - Complex(1.0)) > 1e-9) res.phase_free = false;
  }
  return res;
}

}  // namespace swapnet
