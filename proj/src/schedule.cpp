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

#include "swapnet/schedule.hpp"

#include <json.hpp>

#include <algorithm>
#include <map>
#include <set>
#include <tuple>
#include <stdexcept>

namespace swapnet {

std::string_view op_kind_name(PipelineOpKind kind) {
  switch (kind) {
    case PipelineOpKind::Load:
      return "D";
    case PipelineOpKind::Unload:
      return "D+";
    case PipelineOpKind::BusExchange:
      return "D+D";
    case PipelineOpKind::RouteDown:
      return "Rdown";
    case PipelineOpKind::RouteUp:
      return "Rup";
    case PipelineOpKind::Routing:
      return "Routing";
    case PipelineOpKind::Memory:
      return "M";
  }
  return "?";
}

std::vector<std::string> PipelineOp::resources(int n) const {
  std::vector<std::string> out;
  switch (kind) {
    case PipelineOpKind::Load:
    case PipelineOpKind::Unload:
    case PipelineOpKind::BusExchange:
      for (int w : words) out.push_back("bus:" + std::to_string(w));
      out.push_back("layer:0");
      break;
    case PipelineOpKind::RouteDown:
    case PipelineOpKind::RouteUp:
    case PipelineOpKind::Routing:
      out.push_back("layer:" + std::to_string(layer));
      out.push_back("layer:" + std::to_string(layer + 1));
      break;
    case PipelineOpKind::Memory:
      out.push_back("layer:" + std::to_string(n - 1));
      break;
  }
  return out;
}

int PipelineSchedule::merged_pairs() const {
  int count = 0;
  for (const auto& s : steps)
    for (const auto& op : s.ops) count += op.kind == PipelineOpKind::Routing;
  return count;
}

int PipelineSchedule::bus_exchanges() const {
  int count = 0;
  for (const auto& s : steps)
    for (const auto& op : s.ops) count += op.kind == PipelineOpKind::BusExchange;
  return count;
}

int PipelineSchedule::routing_ops() const {
  int count = 0;
  for (const auto& s : steps)
    for (const auto& op : s.ops)
      count += op.kind == PipelineOpKind::Routing || op.kind == PipelineOpKind::RouteDown ||
               op.kind == PipelineOpKind::RouteUp;
  return count;
}

std::vector<int> PipelineSchedule::merge_partners(int word) const {
  std::vector<int> out;
  for (const auto& s : steps)
    for (const auto& op : s.ops)
      if (op.kind == PipelineOpKind::Routing && op.words[1] == word) out.push_back(op.words[0]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> PipelineSchedule::conflicting_steps() const {
  std::vector<int> out;
  for (const auto& s : steps) {
    std::set<std::string> held;
    bool clash = false;
    for (const auto& op : s.ops)
      for (const auto& r : op.resources(n)) clash |= !held.insert(r).second;
    if (clash) out.push_back(s.time);
  }
  return out;
}

namespace {

struct Primitive {
  PipelineOpKind kind;
  int layer;
  int word;
};

PipelineSchedule assemble(int n, const std::vector<int>& words, std::vector<int> starts) {
  std::map<int, std::vector<Primitive>> by_time;
  for (std::size_t j = 0; j < words.size(); ++j) {
    const int s = starts[j];
    const int w = words[j];
    by_time[s].push_back({PipelineOpKind::Load, -1, w});
    for (int b = 0; b <= n - 2; ++b) by_time[s + 1 + b].push_back({PipelineOpKind::RouteDown, b, w});
    by_time[s + n].push_back({PipelineOpKind::Memory, -1, w});
    for (int a = n - 2; a >= 0; --a) by_time[s + 2 * n - 1 - a].push_back({PipelineOpKind::RouteUp, a, w});
    by_time[s + 2 * n].push_back({PipelineOpKind::Unload, -1, w});
  }

  PipelineSchedule out;
  out.n = n;
  out.words = words;
  out.starts = std::move(starts);
  const int last = by_time.empty() ? -1 : by_time.rbegin()->first;
  for (int t = 0; t <= last; ++t) {
    PipelineStep step;
    step.time = t;
    auto prims = by_time[t];
    std::vector<bool> used(prims.size(), false);
    for (std::size_t i = 0; i < prims.size(); ++i) {
      if (used[i]) continue;
      const auto& p = prims[i];
      // Look for a partner to merge with.
      std::size_t partner = prims.size();
      for (std::size_t j = 0; j < prims.size(); ++j) {
        if (j == i || used[j]) continue;
        const auto& q = prims[j];
        const bool routes = p.layer == q.layer &&
                            ((p.kind == PipelineOpKind::RouteUp && q.kind == PipelineOpKind::RouteDown) ||
                             (p.kind == PipelineOpKind::RouteDown && q.kind == PipelineOpKind::RouteUp));
        const bool bus = (p.kind == PipelineOpKind::Unload && q.kind == PipelineOpKind::Load) ||
                         (p.kind == PipelineOpKind::Load && q.kind == PipelineOpKind::Unload);
        if (routes || bus) {
          partner = j;
          break;
        }
      }
      if (partner == prims.size()) {
        step.ops.push_back({p.kind, p.layer, {p.word}});
        used[i] = true;
        continue;
      }
      const auto& q = prims[partner];
      used[i] = used[partner] = true;
      const bool p_first = p.kind == PipelineOpKind::RouteUp || p.kind == PipelineOpKind::Unload;
      const int outgoing = p_first ? p.word : q.word;
      const int incoming = p_first ? q.word : p.word;
      const bool is_route = p.kind == PipelineOpKind::RouteUp || p.kind == PipelineOpKind::RouteDown;
      step.ops.push_back({is_route ? PipelineOpKind::Routing : PipelineOpKind::BusExchange,
                          is_route ? p.layer : -1,
                          {outgoing, incoming}});
    }
    std::sort(step.ops.begin(), step.ops.end(), [](const PipelineOp& a, const PipelineOp& b) {
      return std::tie(a.layer, a.kind, a.words) < std::tie(b.layer, b.kind, b.words);
    });
    out.steps.push_back(std::move(step));
  }
  return out;
}

void check_words(int n, const std::vector<int>& words) {
  if (n < 1) throw std::invalid_argument("pipeline_schedule: n must be >= 1");
  for (std::size_t j = 0; j < words.size(); ++j) {
    if (words[j] < 0) throw std::invalid_argument("pipeline_schedule: negative word index");
    if (j > 0 && words[j] <= words[j - 1])
      throw std::invalid_argument("pipeline_schedule: word indices must increase");
  }
}

}  // namespace

PipelineSchedule pipeline_schedule(int n, const std::vector<int>& words) {
  check_words(n, words);
  std::vector<int> starts(words.size(), 0);
  for (std::size_t j = 1; j < words.size(); ++j) {
    const int gap = words[j] - words[j - 1];
    starts[j] = starts[j - 1] + (gap <= n ? 2 * gap : 2 * n + 1);
  }
  return assemble(n, words, std::move(starts));
}

PipelineSchedule pipeline_schedule(int n, int k) {
  if (k < 1) throw std::invalid_argument("pipeline_schedule: k must be >= 1");
  std::vector<int> words(k);
  for (int i = 0; i < k; ++i) words[i] = i;
  return pipeline_schedule(n, words);
}

PipelineSchedule sequential_schedule(int n, int k) {
  if (k < 1) throw std::invalid_argument("sequential_schedule: k must be >= 1");
  std::vector<int> words(k), starts(k);
  for (int i = 0; i < k; ++i) {
    words[i] = i;
    starts[i] = i * (2 * n + 1);
  }
  check_words(n, words);
  return assemble(n, words, std::move(starts));
}

std::string to_json(const PipelineSchedule& schedule, int indent) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& step : schedule.steps) {
    nlohmann::json ops = nlohmann::json::array();
    for (const auto& op : step.ops)
      ops.push_back({{"op", op_kind_name(op.kind)}, {"layer", op.layer}, {"words", op.words}});
    steps.push_back({{"time", step.time}, {"ops", ops}});
  }
  nlohmann::json j = {{"n", schedule.n},
                      {"words", schedule.words},
                      {"starts", schedule.starts},
                      {"total_steps", schedule.total_steps()},
                      {"merged_pairs", schedule.merged_pairs()},
                      {"bus_exchanges", schedule.bus_exchanges()},
                      {"routing_ops", schedule.routing_ops()},
                      {"steps", steps}};
  return j.dump(indent);
}

}  // namespace swapnet
