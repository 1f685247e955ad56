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

// Random-permutation SWAP-network benchmark on a linear array.

#include "swapnet/compiler.hpp"
#include "swapnet/sim.hpp"

#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace swapnet {

enum class BenchMode {
  Cnot,     ///< three CNOTs per SWAP
  Iscz,     ///< fused iSCZ, one native gate per SWAP
  IswapCz,  ///< iSWAP and CZ as separate native gates
};

std::string_view bench_mode_name(BenchMode mode);

struct BenchConfig {
  std::vector<int> sizes;
  int trials = 100;
  double p = 0.02;
  std::uint64_t seed = 0;
  std::vector<BenchMode> modes = {BenchMode::Cnot, BenchMode::Iscz, BenchMode::IswapCz};
  int max_mixed_qubits = kDefaultMixedQubitCap;
  int jobs = 1;

  /// Throws std::invalid_argument describing the first bad field.
  void validate() const;
};

struct ModeResult {
  BenchMode mode = BenchMode::Cnot;
  int two_qubit_gates = 0;
  int depth = 0;
  int two_qubit_depth = 0;
  double fidelity_noiseless = 0.0;
  double fidelity_noisy = 0.0;
};

struct TrialRecord {
  int n = 0;
  int trial = 0;
  std::uint64_t seed = 0;
  std::vector<int> permutation;
  int m_swaps = 0;
  std::vector<ModeResult> modes;
  std::string error;  ///< non-empty when the trial could not be simulated
};

/// splitmix64 finalizer, used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t x);
std::uint64_t trial_seed(std::uint64_t master, int n, int trial);

/// Uniform integer in [0, bound) by rejection on the raw engine output.
std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound);
double uniform_unit(std::mt19937_64& rng);

/// Seeded Fisher-Yates shuffle of [0, n).
std::vector<int> random_permutation(int n, std::mt19937_64& rng);
std::vector<int> random_permutation(int n, std::uint64_t seed);

/// Haar-random single-qubit state.
Eigen::Vector2cd random_qubit(std::mt19937_64& rng);

struct LinearRouting {
  SwapPath path;
  std::vector<std::vector<std::pair<int, int>>> rounds;  ///< odd-even layers
};

/// Odd-even transposition sort over adjacent wires. After the returned path,
/// wire i holds the value that started on wire perm[i].
LinearRouting route_linear(const std::vector<int>& perm);

TrialRecord run_trial(const BenchConfig& config, int n, int trial);

/// Runs every (size, trial) pair; the result order is size-major, then
/// trial, independent of config.jobs.
std::vector<TrialRecord> run_benchmark(const BenchConfig& config);

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records, const BenchConfig& config);
void write_json(std::ostream& os, const std::vector<TrialRecord>& records, const BenchConfig& config);

}  // namespace swapnet
