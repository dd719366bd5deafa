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

#ifndef PCBPACK_TESTS_PARTITION_CHECK_H_
#define PCBPACK_TESTS_PARTITION_CHECK_H_

#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "pcbpack/branching.h"
#include "pcbpack/oracle.h"

namespace pcbpack::testing {

// Count of `type` with the compound `fresh` (absent from the parent) expanded.
inline int parent_level_count(const Counts& counts, TypeIndex type,
                              std::optional<TypeIndex> fresh, const TypeRegistry& registry) {
  int total = count_at(counts, type);
  if (fresh) {
    for (const auto& [piece, n] : registry.type(*fresh).constituents) {
      if (piece == type) total += n * count_at(counts, *fresh);
    }
  }
  return total;
}

struct PartitionCheck {
  std::vector<std::string> problems;
  bool together_checked = false;
};

// Compares the parent's exact optimum with its children's and checks the
// together / apart rule on the children's optimal solutions.
inline PartitionCheck check_partition(const NodeProblem& parent, BranchPair pair,
                                      const std::optional<NodeProblem>& left,
                                      const NodeProblem& right, const Instance& instance) {
  PartitionCheck check;
  const auto parent_opt = exact_solve_node(parent, instance);
  const auto right_opt = exact_solve_node(right, instance);
  const auto left_opt = left ? exact_solve_node(*left, instance) : std::nullopt;
  const std::string where = "node " + std::to_string(parent.id) + " pair (" +
                            std::to_string(pair.i) + "," + std::to_string(pair.j) + "): ";
  if (parent_opt.has_value() != (left_opt.has_value() || right_opt.has_value())) {
    check.problems.push_back(where + "feasibility differs between parent and children");
  } else if (parent_opt) {
    int best = std::numeric_limits<int>::max();
    if (right_opt) best = std::min(best, right_opt->bins);
    if (left_opt) best = std::min(best, left_opt->bins);
    if (best != parent_opt->bins) {
      check.problems.push_back(where + "parent optimum " + std::to_string(parent_opt->bins) +
                               " but children give " + std::to_string(best));
    }
  }
  const TypeRegistry& registry = *parent.registry;
  if (right_opt) {
    for (const auto& [pattern, n] : right_opt->assignment) {
      const int ci = parent_level_count(pattern.counts, pair.i, std::nullopt, registry);
      const int cj = parent_level_count(pattern.counts, pair.j, std::nullopt, registry);
      const bool together = pair.i == pair.j ? ci >= 2 : ci >= 1 && cj >= 1;
      if (together) check.problems.push_back(where + "right child bin holds the pair");
    }
  }
  // A reused compound changes the meaning of the parent's types; only the
  // first branching on a pair is checked for the together rule.
  std::optional<TypeIndex> fresh;
  if (left) {
    for (TypeIndex type : left->active) {
      if (!parent.is_active(type)) fresh = type;
    }
  }
  if (left_opt && fresh) {
    check.together_checked = true;
    bool together = false;
    for (const auto& [pattern, n] : left_opt->assignment) {
      const int ci = parent_level_count(pattern.counts, pair.i, fresh, registry);
      const int cj = parent_level_count(pattern.counts, pair.j, fresh, registry);
      together = together || (pair.i == pair.j ? ci >= 2 : ci >= 1 && cj >= 1);
    }
    if (!together) check.problems.push_back(where + "no left child bin holds the pair");
  }
  return check;
}

}  // namespace pcbpack::testing

#endif  // PCBPACK_TESTS_PARTITION_CHECK_H_
