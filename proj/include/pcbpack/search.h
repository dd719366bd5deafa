// Copyright 2026 The pcbpack Authors
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

#ifndef PCBPACK_SEARCH_H_
#define PCBPACK_SEARCH_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pcbpack/branching.h"
#include "pcbpack/master.h"
#include "pcbpack/model.h"
#include "pcbpack/node_problem.h"

namespace pcbpack {

enum class SearchStatus {
  kTreeExhausted,
  kGapClosed,
  kTimeLimit,
  kNodeLimit,
  kStoppedByCaller,
};

const char* to_string(SearchStatus status);

struct ProgressEvent {
  enum class Kind { kNode, kIncumbent, kWarning, kFinished };
  Kind kind = Kind::kNode;
  std::int64_t nodes_explored = 0;
  std::int64_t open_nodes = 0;
  std::optional<double> incumbent_bins;
  int incumbent_patterns = 0;
  double best_bound = 0.0;
  std::optional<double> gap;
  double elapsed_seconds = 0.0;
  std::string message;
};

// Observation points used by the command line front end and the acceptance
// suite. All callbacks are optional.
struct SearchHooks {
  std::function<void(const ProgressEvent&)> progress;
  std::function<void(const NodeProblem&, const LinearProgram&, const RmpSolveOutcome&)>
      on_rmp_solve;
  std::function<void(const NodeProblem& parent, const RmpSolveOutcome& outcome,
                     BranchPair pair, const std::optional<NodeProblem>& left,
                     const NodeProblem& right)>
      on_branch;
  // Called after every incumbent improvement; returning true ends the search.
  std::function<bool(const Solution&)> stop_when;
};

struct SearchReport {
  SearchStatus status = SearchStatus::kTreeExhausted;
  NodeSelection strategy = NodeSelection::kHeuristicMinHeap;
  std::uint64_t seed = 0;
  std::int64_t nodes_explored = 0;
  std::int64_t nodes_pruned = 0;
  std::int64_t nodes_infeasible = 0;
  std::int64_t nodes_stuck = 0;
  std::int64_t columns_generated = 0;
  std::int64_t lp_solves = 0;
  double root_bound = 0.0;
  // Smallest open-node LP value rounded up to whole bins. With heuristic
  // pricing this is not a certified lower bound.
  double best_bound = 0.0;
  std::optional<double> gap;
  double wall_seconds = 0.0;
};

struct SearchResult {
  std::optional<Solution> incumbent;
  SearchReport report;
};

using Clock = std::chrono::steady_clock;

// One homogeneous column per active type plus one mixed column from a fill in
// descending area order.
std::vector<Column> initial_columns(const NodeProblem& root, const Instance& instance);
std::vector<Column> initial_columns(const Instance& instance);

struct ColumnGenerationOutcome {
  RmpSolveOutcome rmp;
  bool timed_out = false;
  int rounds = 0;
  std::int64_t columns_added = 0;
};

// Alternates restricted master solves and pricing until pricing finds nothing
// or the deadline passes. Columns are appended to node.pool.
ColumnGenerationOutcome column_generation(NodeProblem& node, const Instance& instance,
                                          const SolverConfig& config,
                                          std::optional<Clock::time_point> deadline = {},
                                          const SearchHooks* hooks = nullptr);

// Branch-and-price over the whole instance. The incumbent is ranked by
// (bins, patterns).
SearchResult run(const Instance& instance, const SolverConfig& config,
                 const SearchHooks& hooks = {});

// Solution for an integral node outcome, columns expanded to original types.
Solution extract_solution(const NodeProblem& node, const RmpSolveOutcome& outcome,
                          const SolverConfig& config);

// True if every witness verifies, x is integral and the totals meet the
// instance ranges.
bool is_valid_solution(const Solution& solution, const Instance& instance);

}  // namespace pcbpack

#endif  // PCBPACK_SEARCH_H_
