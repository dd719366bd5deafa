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

#ifndef PCBPACK_BRANCHING_H_
#define PCBPACK_BRANCHING_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "pcbpack/master.h"
#include "pcbpack/model.h"
#include "pcbpack/node_problem.h"

namespace pcbpack {

// Symmetric matrix over the node's active types (positions in node.active).
struct AffinityMatrix {
  std::vector<TypeIndex> types;
  std::vector<double> values;

  double at(std::size_t a, std::size_t b) const { return values[a * types.size() + b]; }
  double& at(std::size_t a, std::size_t b) { return values[a * types.size() + b]; }
};

// rho_ii = sum_l a_il (a_il - 1) / 2 x_l, rho_ij = sum_l a_il a_jl x_l, with
// counts taken at node level (compounds are not expanded).
AffinityMatrix affinity(const NodeProblem& node, std::span<const double> x);

struct BranchPair {
  TypeIndex i = 0;
  TypeIndex j = 0;

  bool operator==(const BranchPair&) const = default;
};

// A fractional solution admits no pair under the selection rules.
class BranchingStuck : public StructuralError {
 public:
  using StructuralError::StructuralError;
};

// Pair with the most fractional affinity; if all affinities are integral,
// the area rule on the most fractional eligible column. Pairs are returned
// with i <= j except for the area rule, which returns (largest, next).
BranchPair select_branching_pair(const NodeProblem& node, const RmpSolveOutcome& outcome);

// "Apart" child: conflict (i, j), or cap on i when i == j. Violating columns
// are dropped.
NodeProblem make_right_child(const NodeProblem& node, BranchPair pair, int child_id,
                             const Instance& instance);

// "Together" child: registers (or reuses and increments) the compound for
// (i, j), lowers the multiplicities of i and j, folds one occurrence of the
// pair in every inherited column into the compound, and adds the compound's
// unit column. Returns nullopt when the compound does not fit one bin.
std::optional<NodeProblem> make_left_child(const NodeProblem& node, BranchPair pair,
                                           int child_id, const Instance& instance);

// Adds, for every active type with from > 0, a single-type column when the
// pool has none, which keeps the restricted master feasible unless the node
// rules forbid the type in every bin.
void ensure_homogeneous_columns(NodeProblem& node, const Instance& instance);

}  // namespace pcbpack

#endif  // PCBPACK_BRANCHING_H_
