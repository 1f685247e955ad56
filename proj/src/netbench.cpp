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

#include "swapnet/netbench.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <cstdio>
#include <numbers>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace swapnet {

std::string_view bench_mode_name(BenchMode mode) {
  switch (mode) {
    case BenchMode::Cnot:
      return "cnot";
    case BenchMode::Iscz:
      return "iscz";
    case BenchMode::IswapCz:
      return "iswap_cz";
  }
  return "?";
}

void BenchConfig::validate() const {
  if (sizes.empty()) throw std::invalid_argument("bench: no sizes given");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("bench: sizes must be >= 1");
  if (trials < 1) throw std::invalid_argument("bench: trials must be >= 1");
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("bench: p must lie in [0, 1]");
  if (modes.empty()) throw std::invalid_argument("bench: no compile modes");
  if (jobs < 1) throw std::invalid_argument("bench: jobs must be >= 1");
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t trial_seed(std::uint64_t master, int n, int trial) {
  return mix_seed(mix_seed(mix_seed(master) ^ static_cast<std::uint64_t>(n)) ^
                  static_cast<std::uint64_t>(trial));
}

std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("uniform_below: empty range");
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x;
  do x = rng();
  while (x >= limit);
  return x % bound;
}

double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::vector<int> random_permutation(int n, std::mt19937_64& rng) {
  if (n < 1) throw std::invalid_argument("random_permutation: n must be >= 1");
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = n - 1; i > 0; --i)
    std::swap(perm[i], perm[uniform_below(rng, static_cast<std::uint64_t>(i) + 1)]);
  return perm;
}

std::vector<int> random_permutation(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return random_permutation(n, rng);
}

Eigen::Vector2cd random_qubit(std::mt19937_64& rng) {
  const double cos_theta = 2.0 * uniform_unit(rng) - 1.0;
  const double theta = std::acos(std::clamp(cos_theta, -1.0, 1.0));
  const double phi = 2.0 * std::numbers::pi * uniform_unit(rng);
  return {Complex(std::cos(theta / 2), 0.0), std::polar(std::sin(theta / 2), phi)};
}

LinearRouting route_linear(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  std::vector<int> seen(n, 0);
  for (int v : perm) {
    if (v < 0 || v >= n || seen[v]) throw std::invalid_argument("route_linear: not a permutation");
    seen[v] = 1;
  }
  // key[w]: destination wire of the value currently on w.
  std::vector<int> key(n);
  for (int i = 0; i < n; ++i) key[perm[i]] = i;

  LinearRouting out;
  out.path.n = n;
  auto sorted = [&] { return std::is_sorted(key.begin(), key.end()); };
  for (int round = 0; !sorted(); ++round) {
    std::vector<std::pair<int, int>> layer;
    for (int w = round % 2; w + 1 < n; w += 2) {
      if (key[w] > key[w + 1]) {
        std::swap(key[w], key[w + 1]);
        layer.emplace_back(w, w + 1);
        out.path.pairs.emplace_back(w, w + 1);
      }
    }
    out.rounds.push_back(std::move(layer));
  }
  return out;
}

namespace {

Circuit compile_mode(const SwapPath& path, BenchMode mode) {
  switch (mode) {
    case BenchMode::Cnot:
      return compile_cnot_baseline(path);
    case BenchMode::Iscz:
      return compile_iscz(path).circuit;
    case BenchMode::IswapCz:
      return compile_iswap_cz(path).circuit;
  }
  throw std::invalid_argument("unknown bench mode");
}

}  // namespace

TrialRecord run_trial(const BenchConfig& config, int n, int trial) {
  TrialRecord rec;
  rec.n = n;
  rec.trial = trial;
  rec.seed = trial_seed(config.seed, n, trial);
  std::mt19937_64 rng(rec.seed);
  rec.permutation = random_permutation(n, rng);
  const auto routing = route_linear(rec.permutation);
  rec.m_swaps = static_cast<int>(routing.path.size());

  std::vector<Eigen::Vector2cd> inputs(n);
  for (auto& q : inputs) q = random_qubit(rng);
  std::vector<Eigen::Vector2cd> permuted(n);
  for (int i = 0; i < n; ++i) permuted[i] = inputs[rec.permutation[i]];
  const auto input = QuantumState::product(inputs);
  const auto expected = QuantumState::product(permuted);

  const bool noisy_fits = n <= config.max_mixed_qubits;
  if (!noisy_fits)
    rec.error = "n=" + std::to_string(n) + " exceeds density-matrix cap of " +
                std::to_string(config.max_mixed_qubits);

  for (BenchMode mode : config.modes) {
    const Circuit circuit = compile_mode(routing.path, mode);
    const Metrics metrics = depth(circuit);
    ModeResult res;
    res.mode = mode;
    res.two_qubit_gates = metrics.two_qubit_gates;
    res.depth = metrics.depth;
    res.two_qubit_depth = metrics.two_qubit_depth;
    const auto output = apply_circuit(input, circuit);
    res.fidelity_noiseless = fidelity(expected, output);
    if (noisy_fits) {
      auto rho = apply_circuit(QuantumState::mixed_from(input, config.max_mixed_qubits), circuit,
                               NoiseModel(config.p));
      res.fidelity_noisy = fidelity(output, rho);
    } else {
      res.fidelity_noisy = std::nan("");
    }
    rec.modes.push_back(res);
  }
  return rec;
}

std::vector<TrialRecord> run_benchmark(const BenchConfig& config) {
  config.validate();
  std::vector<std::pair<int, int>> work;
  for (int n : config.sizes)
    for (int t = 0; t < config.trials; ++t) work.emplace_back(n, t);
  std::vector<TrialRecord> out(work.size());

  const int jobs = std::min<int>(config.jobs, static_cast<int>(work.size()));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < work.size(); ++i) out[i] = run_trial(config, work[i].first, work[i].second);
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(jobs);
  for (int j = 0; j < jobs; ++j)
    pool.emplace_back([&, j] {
      try {
        for (std::size_t i = j; i < work.size(); i += jobs)
          out[i] = run_trial(config, work[i].first, work[i].second);
      } catch (...) {
        errors[j] = std::current_exception();
      }
    });
  for (auto& t : pool) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

namespace {

std::string fmt_double(double x) {
  if (std::isnan(x)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return buf;
}

}  // namespace

void write_csv(std::ostream& os, const std::vector<TrialRecord>& records, const BenchConfig& config) {
  os << "n,trial,mode,m_swaps,two_qubit_gates,depth,two_qubit_depth,fidelity_noiseless,"
        "fidelity_noisy,p,seed\n";
  for (const auto& r : records)
    for (const auto& m : r.modes)
      os << r.n << ',' << r.trial << ',' << bench_mode_name(m.mode) << ',' << r.m_swaps << ','
         << m.two_qubit_gates << ',' << m.depth << ',' << m.two_qubit_depth << ','
         << fmt_double(m.fidelity_noiseless) << ',' << fmt_double(m.fidelity_noisy) << ','
         << fmt_double(config.p) << ',' << r.seed << '\n';
}

void write_json(std::ostream& os, const std::vector<TrialRecord>& records, const BenchConfig& config) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : records)
    for (const auto& m : r.modes) {
      nlohmann::json row;
      row["n"] = r.n;
      row["trial"] = r.trial;
      row["mode"] = bench_mode_name(m.mode);
      row["m_swaps"] = r.m_swaps;
      row["two_qubit_gates"] = m.two_qubit_gates;
      row["depth"] = m.depth;
      row["two_qubit_depth"] = m.two_qubit_depth;
      row["fidelity_noiseless"] = m.fidelity_noiseless;
      if (std::isnan(m.fidelity_noisy))
        row["fidelity_noisy"] = nullptr;
      else
        row["fidelity_noisy"] = m.fidelity_noisy;
      row["p"] = config.p;
      row["seed"] = r.seed;
      row["permutation"] = r.permutation;
      if (!r.error.empty()) row["error"] = r.error;
      rows.push_back(std::move(row));
    }
  os << rows.dump(1) << '\n';
}

}  // namespace swapnet
