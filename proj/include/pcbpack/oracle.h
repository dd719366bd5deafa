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

#ifndef PCBPACK_ORACLE_H_
#define PCBPACK_ORACLE_H_

#include <optional>
#include <stdexcept>
#include <vector>

#include "pcbpack/model.h"
#include "pcbpack/node_problem.h"

namespace pcbpack {

// Reference solver for toy instances. Pattern feasibility means: some
// permutation of the rectangle multiset is placed by bottom_left_place.

class OracleGuardError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr long long kOracleMaxVectors = 10000;
inline constexpr int kOracleMaxRectangles = 8;

// Witness layout if some ordering of the original-type multiset fits one bin.
// Multisets rejected by the area bound never count against the size guard.
std::optional<Layout> exact_fits(const Counts& original_counts, const Instance& instance);

// Maximal feasible count vectors (componentwise order) with counts <= caps.
std::vector<Counts> exact_max_fill(const Counts& caps, const Instance& instance);

struct OraclePattern {
  Counts counts;     // node-level counts
  Layout witness;
};

struct OracleResult {
  int bins = 0;
  int patterns = 0;
  // (pattern, number of bins) with positive multiplicity.
  std::vector<std::pair<OraclePattern, int>> assignment;
};

// Every nonzero admissible count vector of the node that fits one bin.
std::vector<OraclePattern> exact_patterns(const NodeProblem& node, const Instance& instance);

// Minimum bins, then minimum patterns, over the node's constrained problem.
// nullopt if the node has no integral solution.
std::optional<OracleResult> exact_solve_node(const NodeProblem& node, const Instance& instance);

// Whole-instance optimum; requires n <= 3 and to_j <= 4.
OracleResult exact_solve(const Instance& instance);

}  // namespace pcbpack

#endif  // PCBPACK_ORACLE_H_
