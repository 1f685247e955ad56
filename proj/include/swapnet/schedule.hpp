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

// Time-stepped schedule for loading data words through a bucket-brigade tree.
//
// Each word w runs Load, RouteDown(0..n-2), Memory, RouteUp(n-2..0), Unload,
// one operation per step (2n + 1 steps). Successive words start 2 * gap steps
// apart, where gap is the difference of their word indices. A downward and an
// upward move across the same layer boundary in the same step merge into one
// bidirectional Routing; an Unload and a Load in the same step merge into one
// bus exchange.

#include <string>
#include <string_view>
#include <vector>

namespace swapnet {

enum class PipelineOpKind {
  Load,         ///< bus wire -> root data register
  Unload,       ///< root data register -> bus wire
  BusExchange,  ///< Unload of words[0] then Load of words[1]
  RouteDown,    ///< unidirectional, boundary (layer, layer + 1)
  RouteUp,      ///< unidirectional, boundary (layer, layer + 1)
  Routing,      ///< merged RouteUp of words[0] and RouteDown of words[1]
  Memory,       ///< classical memory interaction at the leaves
};

std::string_view op_kind_name(PipelineOpKind kind);

struct PipelineOp {
  PipelineOpKind kind;
  int layer = -1;          ///< boundary index for routing ops, -1 otherwise
  std::vector<int> words;  ///< word indices (two for merged ops)

  /// Resources held during the step: "bus:<w>" and "layer:<l>".
  std::vector<std::string> resources(int n) const;
};

struct PipelineStep {
  int time = 0;
  std::vector<PipelineOp> ops;
};

struct PipelineSchedule {
  int n = 0;
  std::vector<int> words;   ///< word indices in loading order
  std::vector<int> starts;  ///< start step of each listed word
  std::vector<PipelineStep> steps;

  int total_steps() const { return static_cast<int>(steps.size()); }
  /// Number of RouteUp/RouteDown pairs merged into a bidirectional Routing.
  int merged_pairs() const;
  int bus_exchanges() const;
  /// Layer-level routing operations after merging.
  int routing_ops() const;
  /// Earlier words whose upward move merged with the given word's downward move.
  std::vector<int> merge_partners(int word) const;
  /// Steps with two operations sharing a resource, empty when conflict free.
  std::vector<int> conflicting_steps() const;
};

/// Pipelined schedule for the listed (strictly increasing) word indices.
/// Words closer than n + 1 indices apart overlap; farther words run after the
/// previous one finishes. Throws std::invalid_argument for n < 1 or an
/// unsorted word list.
PipelineSchedule pipeline_schedule(int n, const std::vector<int>& words);
/// Words 0..k-1.
PipelineSchedule pipeline_schedule(int n, int k);
/// One word after another with no overlap.
PipelineSchedule sequential_schedule(int n, int k);

std::string to_json(const PipelineSchedule& schedule, int indent = -1);

}  // namespace swapnet
