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

#include "pcbpack/master.h"

#include <cmath>

namespace pcbpack {

double DualPrices::score(TypeIndex type) const {
  for (std::size_t k = 0; k < types.size(); ++k) {
    if (types[k] == type) return pi1[k] - pi2[k];
  }
  return 0.0;
}

int RmpSolveOutcome::patterns_used() const {
  int used = 0;
  for (double value : x) used += value > kIntegralityTolerance ? 1 : 0;
  return used;
}

LinearProgram build_rmp(const NodeProblem& node) {
  LinearProgram lp;
  const int columns = static_cast<int>(node.pool.size());
  lp.objective.assign(columns, -1.0);
  for (TypeIndex type : node.active) {
    std::vector<double> lower(columns, 0.0);
    std::vector<double> upper(columns, 0.0);
    for (int l = 0; l < columns; ++l) {
      const int a = count_at(node.pool[l].counts, type);
      lower[l] = -a;
      upper[l] = a;
    }
    lp.rows.push_back(std::move(lower));
    lp.rhs.push_back(-node.from_of(type));
    lp.rows.push_back(std::move(upper));
    lp.rhs.push_back(node.to_of(type));
  }
  return lp;
}

RmpSolveOutcome solve_rmp(const NodeProblem& node, std::span<const BasisEntry> warm_basis) {
  RmpSolveOutcome outcome;
  outcome.lp = solve_lp(build_rmp(node), warm_basis);
  if (outcome.lp.status == LpStatus::kInfeasible) {
    outcome.infeasible = true;
    return outcome;
  }
  if (outcome.lp.status == LpStatus::kUnbounded) {
    throw StructuralError("restricted master is unbounded");
  }
  outcome.x = outcome.lp.x;
  outcome.bins = -outcome.lp.objective;
  for (double value : outcome.x) {
    if (std::abs(value - std::round(value)) > kIntegralityTolerance) {
      outcome.fractional = true;
    }
  }
  outcome.duals.types = node.active;
  for (std::size_t k = 0; k < node.active.size(); ++k) {
    outcome.duals.pi1.push_back(outcome.lp.duals[2 * k]);
    outcome.duals.pi2.push_back(outcome.lp.duals[2 * k + 1]);
  }
  return outcome;
}

double report_objective(const Solution& solution, const SolverConfig& config) {
  if (!solution.integral) {
    throw std::invalid_argument("objective report requires an integral solution");
  }
  return config.c1 * solution.patterns + config.c2 * solution.bins;
}

}  // namespace pcbpack
