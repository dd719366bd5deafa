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

#ifndef PCBPACK_MASTER_H_
#define PCBPACK_MASTER_H_

#include <span>
#include <vector>

#include "pcbpack/model.h"
#include "pcbpack/node_problem.h"
#include "pcbpack/simplex.h"

namespace pcbpack {

// Shadow prices of the demand rows: pi1 for the lower-bound rows
// (-a x <= -from), pi2 for the upper-bound rows (a x <= to), one entry per
// active type.
struct DualPrices {
  std::vector<TypeIndex> types;
  std::vector<double> pi1;
  std::vector<double> pi2;

  // pi1 - pi2 for `type`, 0 for types without rows.
  double score(TypeIndex type) const;
};

struct RmpSolveOutcome {
  LpResult lp;
  std::vector<double> x;  // per pooled column
  double bins = 0.0;
  bool fractional = false;
  bool infeasible = false;
  DualPrices duals;

  // Columns with x > kIntegralityTolerance.
  int patterns_used() const;
};

// Relaxed restricted master in standard form: one variable per pooled column
// with objective -1, and for the k-th active type rows 2k (lower) and 2k+1
// (upper). Compounds are rows of their own.
LinearProgram build_rmp(const NodeProblem& node);

// Throws StructuralError if the LP is unbounded.
RmpSolveOutcome solve_rmp(const NodeProblem& node,
                          std::span<const BasisEntry> warm_basis = {});

// c1 * patterns + c2 * bins of an integral solution; std::invalid_argument
// for fractional ones.
double report_objective(const Solution& solution, const SolverConfig& config);

}  // namespace pcbpack

#endif  // PCBPACK_MASTER_H_
