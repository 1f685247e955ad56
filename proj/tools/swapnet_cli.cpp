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

// swapnet command-line front end.
//
// Exit codes: 0 success, 1 validation or verification failure, 2 I/O or
// parse error. Data goes to stdout or --out, diagnostics to stderr.

#include "swapnet/circuit.hpp"
#include "swapnet/compiler.hpp"
#include "swapnet/gates.hpp"
#include "swapnet/netbench.hpp"
#include "swapnet/qram.hpp"
#include "swapnet/schedule.hpp"
#include "swapnet/sim.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace {

using namespace swapnet;

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kIoError = 2;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out) throw IoError("cannot write '" + path + "'");
  out << text;
  if (!out) throw IoError("write failed for '" + path + "'");
}

// "3..8" or "3,5,7".
std::vector<int> parse_sizes(const std::string& text) {
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (lo > hi) throw std::invalid_argument("--sizes: empty range '" + text + "'");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ',');) out.push_back(std::stoi(item));
  if (out.empty()) throw std::invalid_argument("--sizes: no sizes given");
  return out;
}

std::string metrics_line(const Circuit& c) {
  const Metrics m = depth(c);
  std::ostringstream os;
  os << "wires=" << c.n_wires() << " gates=" << m.total_gates << " 1q=" << m.single_qubit_gates
     << " 2q=" << m.two_qubit_gates << " 3q=" << m.three_qubit_gates << " depth=" << m.depth
     << " 2q_depth=" << m.two_qubit_depth;
  return os.str();
}

CouplingMap load_map(const std::string& name, int n) {
  if (name == "line") return CouplingMap::line(n);
  if (name == "ring") return CouplingMap::ring(n);
  if (name == "complete") return CouplingMap::complete(n);
  return coupling_map_from_json(read_file(name));
}

QramConfig load_qram_config(const std::string& path) { return qram_config_from_json(read_file(path)); }

struct CompileArgs {
  std::string path, mode = "iscz", map = "line", policy = "earliest", out;
  std::vector<int> zero;
};

int run_compile(const CompileArgs& a) {
  const SwapPath path = swap_path_from_json(read_file(a.path));
  Circuit circuit;
  if (a.mode == "iscz") {
    circuit = compile_iscz(path).circuit;
  } else if (a.mode == "iswap_cz") {
    circuit = compile_iswap_cz(path).circuit;
  } else if (a.mode == "cnot") {
    circuit = compile_cnot_baseline(path);
  } else if (a.mode == "ext1") {
    circuit = compile_ext1(path, {a.zero.begin(), a.zero.end()}).circuit;
  } else {
    const auto policy = a.policy == "latest" ? CzPolicy::Latest : CzPolicy::Earliest;
    circuit = compile_ext2(path, load_map(a.map, path.n), policy);
  }
  write_output(a.out, to_json(circuit, 2) + "\n");
  (a.out.empty() ? std::cerr : std::cout) << metrics_line(circuit) << "\n";
  return kOk;
}

struct VerifyArgs {
  std::string path, circuit;
  std::vector<int> zero;
  double tol = 1e-9;
};

int run_verify(const VerifyArgs& a) {
  const SwapPath path = swap_path_from_json(read_file(a.path));
  Circuit circuit = circuit_from_json(read_file(a.circuit));
  std::set<int> zero(a.zero.begin(), a.zero.end());
  if (zero.empty()) zero = circuit.known_zero();
  const double dev = verify_equivalence(path, circuit, zero);
  std::printf("max_deviation %.3e\n", dev);
  return dev < a.tol ? kOk : kFailed;
}

struct BenchArgs {
  std::string sizes = "3..8", csv, json;
  int trials = 100, jobs = 1, max_mixed = kDefaultMixedQubitCap;
  double p = 0.02;
  std::uint64_t seed = 0;
};

int run_bench(const BenchArgs& a) {
  BenchConfig cfg;
  cfg.sizes = parse_sizes(a.sizes);
  cfg.trials = a.trials;
  cfg.p = a.p;
  cfg.seed = a.seed;
  cfg.jobs = a.jobs;
  cfg.max_mixed_qubits = a.max_mixed;
  cfg.validate();
  const auto records = run_benchmark(cfg);
  auto emit = [&](const std::string& path, bool csv) {
    std::ostringstream os;
    csv ? write_csv(os, records, cfg) : write_json(os, records, cfg);
    write_output(path, os.str());
  };
  if (!a.csv.empty()) emit(a.csv, true);
  if (!a.json.empty()) emit(a.json, false);
  if (a.csv.empty() && a.json.empty()) emit("", true);
  int failed = 0;
  for (const auto& r : records)
    if (!r.error.empty()) {
      ++failed;
      std::cerr << "n=" << r.n << " trial=" << r.trial << ": " << r.error << "\n";
    }
  return failed == 0 ? kOk : kFailed;
}

struct QramArgs {
  std::string config, out, backend = "auto", words;
  int n = 0, k = 0;
  bool json = false, tally = false, sequential = false;
};

int run_qram_build(const QramArgs& a) {
  const QramBuild build = build_qram(load_qram_config(a.config));
  write_output(a.out, to_json(build.circuit, 2) + "\n");
  (a.out.empty() ? std::cerr : std::cout) << metrics_line(build.circuit) << "\n";
  return kOk;
}

int run_qram_count(const QramArgs& a) {
  QramConfig config;
  if (!a.config.empty()) {
    config = load_qram_config(a.config);
  } else {
    config.n = a.n;
    config.k = a.k;
    if (config.n < 1 || config.k < 1) throw std::invalid_argument("qram-count: need --config or --n/--k >= 1");
  }
  std::optional<QramBuild> build;
  if (a.tally) {
    if (config.memory.empty()) config.memory.assign(config.address_count(), 0);
    build = build_qram(config);
  }
  const CountResult res = count_gates(config, build ? &*build : nullptr);
  std::string text = a.json ? to_json(res.closed, 2) + "\n" : to_table(res.closed);
  if (res.tallied) {
    text += a.json ? to_json(*res.tallied, 2) + "\n" : "built circuit tally:\n" + to_table(*res.tallied);
  }
  write_output(a.out, text);
  if (!res.agree()) {
    std::cerr << "closed form and built-circuit tally differ\n";
    return kFailed;
  }
  return kOk;
}

int run_qram_verify(const QramArgs& a) {
  QramBackend backend = QramBackend::Auto;
  if (a.backend == "statevector") backend = QramBackend::Statevector;
  if (a.backend == "sparse") backend = QramBackend::Sparse;
  const auto res = verify_qram(load_qram_config(a.config), backend);
  std::printf("max_deviation %.3e inputs %zu ancillas_restored %s phase_free %s\n", res.max_deviation,
              res.inputs_checked, res.ancillas_restored ? "yes" : "no", res.phase_free ? "yes" : "no");
  const bool ok = res.max_deviation < 1e-9 && res.ancillas_restored && res.phase_free;
  return ok ? kOk : kFailed;
}

int run_schedule(const QramArgs& a) {
  if (a.n < 1 || a.k < 1) throw std::invalid_argument("schedule: --n and --k must be >= 1");
  PipelineSchedule s;
  if (a.sequential) {
    s = sequential_schedule(a.n, a.k);
  } else if (!a.words.empty()) {
    s = pipeline_schedule(a.n, parse_sizes(a.words));
  } else {
    s = pipeline_schedule(a.n, a.k);
  }
  write_output(a.out, to_json(s, 2) + "\n");
  return s.conflicting_steps().empty() ? kOk : kFailed;
}

struct MatrixArgs {
  std::string gate;
  std::vector<double> params;
  bool pauli = false;
};

int run_matrix(const MatrixArgs& a) {
  const auto kind = gate_kind_from_name(a.gate);
  if (!kind) throw std::invalid_argument("matrix: unknown gate '" + a.gate + "'");
  const Matrix m = gate_matrix<double>(*kind, a.params);
  const Eigen::IOFormat fmt(6, 0, ", ", "\n", "[", "]");
  std::cout << m.format(fmt) << "\n";
  if (a.pauli) std::cout << pauli_expansion(*kind, a.params).to_string() << "\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SWAP-network compilation to native {CZ, iSWAP} gates, benchmarking and QRAM tools"};
  app.require_subcommand(1);

  CompileArgs ca;
  auto* compile = app.add_subcommand("compile", "Compile a SWAP path into native gates");
  compile->add_option("--path", ca.path, "SwapPath JSON")->required();
  compile->add_option("--mode", ca.mode)->check(CLI::IsMember({"iscz", "cnot", "iswap_cz", "ext1", "ext2"}));
  compile->add_option("--zero", ca.zero, "wires known to start in |0> (ext1)")->delimiter(',');
  compile->add_option("--map", ca.map, "line, ring, complete or a coupling-map JSON file (ext2)");
  compile->add_option("--policy", ca.policy)->check(CLI::IsMember({"earliest", "latest"}));
  compile->add_option("--out", ca.out, "output circuit JSON");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Check a circuit against a SWAP path's permutation");
  verify->add_option("--path", va.path)->required();
  verify->add_option("--circuit", va.circuit)->required();
  verify->add_option("--zero", va.zero)->delimiter(',');
  verify->add_option("--tol", va.tol)->check(CLI::PositiveNumber);

  BenchArgs ba;
  auto* bench = app.add_subcommand("bench", "Random-permutation benchmark on a line");
  bench->add_option("--sizes", ba.sizes, "range a..b or comma list");
  bench->add_option("--trials", ba.trials)->check(CLI::PositiveNumber);
  bench->add_option("--p", ba.p)->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", ba.seed);
  bench->add_option("--jobs", ba.jobs)->check(CLI::PositiveNumber);
  bench->add_option("--max-mixed", ba.max_mixed)->check(CLI::PositiveNumber);
  bench->add_option("--csv", ba.csv);
  bench->add_option("--json", ba.json);

  QramArgs qa;
  auto* qbuild = app.add_subcommand("qram-build", "Emit the QRAM circuit for a config");
  qbuild->add_option("--config", qa.config)->required();
  qbuild->add_option("--out", qa.out);

  auto* qcount = app.add_subcommand("qram-count", "QRAM gate counts (closed form, optional tally)");
  qcount->add_option("--config", qa.config);
  qcount->add_option("--n", qa.n);
  qcount->add_option("--k", qa.k);
  qcount->add_flag("--tally", qa.tally, "also build the circuit and tally it");
  qcount->add_flag("--json", qa.json);
  qcount->add_option("--out", qa.out);

  auto* qverify = app.add_subcommand("qram-verify", "Exhaustive basis-state check of a QRAM build");
  qverify->add_option("--config", qa.config)->required();
  qverify->add_option("--backend", qa.backend)->check(CLI::IsMember({"auto", "statevector", "sparse"}));

  auto* sched = app.add_subcommand("schedule", "Pipelined data-fetching schedule");
  sched->add_option("--n", qa.n)->required();
  sched->add_option("--k", qa.k)->required();
  sched->add_option("--words", qa.words, "explicit word indices, comma list");
  sched->add_flag("--sequential", qa.sequential);
  sched->add_option("--out", qa.out);

  MatrixArgs ma;
  auto* matrix = app.add_subcommand("matrix", "Print a gate matrix");
  matrix->add_option("gate", ma.gate)->required();
  matrix->add_option("--params", ma.params)->delimiter(',');
  matrix->add_flag("--pauli", ma.pauli, "also print the Pauli expansion");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kFailed;
  }

  try {
    if (*compile) return run_compile(ca);
    if (*verify) return run_verify(va);
    if (*bench) return run_bench(ba);
    if (*qbuild) return run_qram_build(qa);
    if (*qcount) return run_qram_count(qa);
    if (*qverify) return run_qram_verify(qa);
    if (*sched) return run_schedule(qa);
    if (*matrix) return run_matrix(ma);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kIoError;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kIoError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kFailed;
  }
  return kFailed;
}
