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

#ifndef PCBPACK_TESTS_LP_ORACLE_H_
#define PCBPACK_TESTS_LP_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "pcbpack/simplex.h"

namespace pcbpack::testing {

struct OracleLpResult {
  LpStatus status = LpStatus::kInfeasible;
  double objective = 0.0;
};

// Solves an n x n system by Gaussian elimination with partial pivoting.
inline std::optional<std::vector<double>> solve_square(std::vector<std::vector<double>> a,
                                                       std::vector<double> b) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int best = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[best][col])) best = r;
    }
    if (std::abs(a[best][col]) < 1e-10) return std::nullopt;
    std::swap(a[best], a[col]);
    std::swap(b[best], b[col]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int k = col; k < n; ++k) a[r][k] -= f * a[col][k];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// Vertex enumeration over A x <= b, x >= 0, plus a far box x_i <= kBox used
// to detect unboundedness. Intended for at most ~4 variables.
inline OracleLpResult enumerate_vertices(const LinearProgram& lp) {
  constexpr double kBox = 1e6;
  const int n = lp.num_vars();
  std::vector<std::vector<double>> rows = lp.rows;
  std::vector<double> rhs = lp.rhs;
  for (int j = 0; j < n; ++j) {
    std::vector<double> neg(n, 0.0), box(n, 0.0);
    neg[j] = -1.0;
    box[j] = 1.0;
    rows.push_back(neg);
    rhs.push_back(0.0);
    rows.push_back(box);
    rhs.push_back(kBox);
  }
  const int m = static_cast<int>(rows.size());
  OracleLpResult result;
  // Best over true vertices and over vertices touching the far box.
  double best = -std::numeric_limits<double>::infinity();
  double best_far = best;
  bool any = false;
  // Iterate over all n-subsets of the m constraints.
  std::vector<bool> mask(m, false);
  std::fill(mask.begin(), mask.begin() + n, true);
  do {
    std::vector<std::vector<double>> a;
    std::vector<double> b;
    for (int i = 0; i < m; ++i) {
      if (!mask[i]) continue;
      a.push_back(rows[i]);
      b.push_back(rhs[i]);
    }
    auto x = solve_square(a, b);
    if (!x) continue;
    bool feasible = true;
    for (int i = 0; i < m && feasible; ++i) {
      double lhs = 0.0;
      for (int j = 0; j < n; ++j) lhs += rows[i][j] * (*x)[j];
      feasible = lhs <= rhs[i] + 1e-7 * (1.0 + std::abs(rhs[i]));
    }
    if (!feasible) continue;
    double value = 0.0;
    for (int j = 0; j < n; ++j) value += lp.objective[j] * (*x)[j];
    any = true;
    const bool far = std::any_of(x->begin(), x->end(), [](double v) { return v > kBox / 2; });
    if (far) {
      best_far = std::max(best_far, value);
    } else {
      best = std::max(best, value);
    }
  } while (std::prev_permutation(mask.begin(), mask.end()));
  if (!any) return result;
  if (best_far > best + 1e-6 * (1.0 + std::abs(best))) {
    result.status = LpStatus::kUnbounded;
    return result;
  }
  result.status = LpStatus::kOptimal;
  result.objective = best;
  return result;
}

// Small random LP with integer data in [-5, 5].
inline LinearProgram random_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vars(1, 4), rows(1, 6), coef(-5, 5), rhs(-4, 10);
  LinearProgram lp;
  const int n = vars(rng);
  const int m = rows(rng);
  lp.objective.resize(n);
  for (double& c : lp.objective) c = coef(rng);
  lp.rows.assign(m, std::vector<double>(n));
  lp.rhs.resize(m);
  for (int i = 0; i < m; ++i) {
    for (double& a : lp.rows[i]) a = coef(rng);
    lp.rhs[i] = rhs(rng);
  }
  return lp;
}

struct DualityResiduals {
  double primal_infeasibility = 0.0;
  double dual_gap = 0.0;             // |c x - b pi|
  double slackness = 0.0;            // max pi_i (b_i - A_i x)
  double reduced_cost = 0.0;         // max over columns of c_j - pi A_j
  double reduced_cost_times_x = 0.0;  // max |(c_j - pi A_j) x_j|
  double min_dual = 0.0;
};

inline DualityResiduals duality_residuals(const LinearProgram& lp, const LpResult& result) {
  DualityResiduals r;
  const int n = lp.num_vars();
  const int m = lp.num_rows();
  double dual_objective = 0.0;
  r.reduced_cost = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    double lhs = 0.0;
    for (int j = 0; j < n; ++j) lhs += lp.rows[i][j] * result.x[j];
    r.primal_infeasibility = std::max(r.primal_infeasibility, lhs - lp.rhs[i]);
    r.slackness = std::max(r.slackness, std::abs(result.duals[i] * (lp.rhs[i] - lhs)));
    dual_objective += result.duals[i] * lp.rhs[i];
    r.min_dual = std::min(r.min_dual, result.duals[i]);
  }
  for (int j = 0; j < n; ++j) {
    double d = lp.objective[j];
    for (int i = 0; i < m; ++i) d -= result.duals[i] * lp.rows[i][j];
    r.reduced_cost = std::max(r.reduced_cost, d);
    r.reduced_cost_times_x = std::max(r.reduced_cost_times_x, std::abs(d * result.x[j]));
  }
  for (double v : result.x) r.primal_infeasibility = std::max(r.primal_infeasibility, -v);
  r.dual_gap = std::abs(result.objective - dual_objective);
  return r;
}

}  // namespace pcbpack::testing

#endif  // PCBPACK_TESTS_LP_ORACLE_H_
