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

#ifndef PCBPACK_NODE_PROBLEM_H_
#define PCBPACK_NODE_PROBLEM_H_

#include <memory>
#include <set>
#include <utility>
#include <vector>

#include "pcbpack/model.h"

namespace pcbpack {

enum class NodeStatus { kOpen, kSolved, kPruned, kInfeasible };

// One branch-and-price node: node-local multiplicities, the column pool it
// inherited or generated, and the "apart" rules added by right branches.
struct NodeProblem {
  int id = 0;
  int parent_id = -1;
  int depth = 0;
  std::shared_ptr<TypeRegistry> registry;
  // Active types in ascending registry order; every active type has to > 0.
  std::vector<TypeIndex> active;
  std::vector<int> from;  // indexed by TypeIndex
  std::vector<int> to;
  std::vector<Column> pool;
  // Pairs (i, j), i < j, whose items must not share a bin.
  std::set<std::pair<TypeIndex, TypeIndex>> conflicts;
  // Types with at most one item per bin.
  std::set<TypeIndex> caps;
  // Number of columns with x > 0 in the parent's solution (heap key).
  int parent_patterns_used = 0;
  // Last LP bins value of the parent; the root keeps 0 until solved.
  double inherited_bound = 0.0;
  NodeStatus status = NodeStatus::kOpen;

  int from_of(TypeIndex type) const;
  int to_of(TypeIndex type) const;
  void set_range(TypeIndex type, int from_value, int to_value);
  bool is_active(TypeIndex type) const;
  bool in_conflict(TypeIndex a, TypeIndex b) const;

  // Column admissible at this node: only active types, counts within to,
  // no conflicting pair together, capped types at most once.
  bool admits(const Counts& counts) const;
  // Whether one more item of `type` keeps `counts` admissible.
  bool admits_increment(const Counts& counts, TypeIndex type) const;

  bool pool_contains(const Counts& counts) const;
  // Appends unless a pooled column has the same count vector.
  bool add_column(Column column);
};

// Root problem: originals with to > 0 active, multiplicities from the instance.
NodeProblem make_root_node(const Instance& instance,
                           std::shared_ptr<TypeRegistry> registry);

}  // namespace pcbpack

#endif  // PCBPACK_NODE_PROBLEM_H_
