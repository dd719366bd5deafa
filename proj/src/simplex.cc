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

#include "pcbpack/simplex.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "pcbpack/model.h"

namespace pcbpack {
namespace {

constexpr double kPivotTolerance = 1e-9;

}  // namespace

void LinearProgram::validate() const {
  if (rows.size() != rhs.size()) {
    throw StructuralError("LP: row count and right-hand side length differ");
  }
  for (double c : objective) {
    if (!std::isfinite(c)) throw StructuralError("LP: non-finite objective");
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != objective.size()) {
      throw StructuralError("LP: row " + std::to_string(i) + " has wrong length");
    }
    for (double a : rows[i]) {
      if (!std::isfinite(a)) throw StructuralError("LP: non-finite coefficient");
    }
    if (!std::isfinite(rhs[i])) throw StructuralError("LP: non-finite right-hand side");
  }
}

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
  }
  return "?";
}

void SimplexSolver::build(const LinearProgram& lp) {
  num_vars_ = lp.num_vars();
  num_rows_ = lp.num_rows();
  int num_artificial = 0;
  for (double b : lp.rhs) num_artificial += b < 0.0 ? 1 : 0;
  num_cols_ = num_vars_ + num_rows_ + num_artificial;
  width_ = num_cols_ + 1;
  tableau_.assign(static_cast<std::size_t>(num_rows_) * width_, 0.0);
  basis_.assign(num_rows_, -1);
  artificial_row_.clear();
  blocked_.assign(num_cols_, 0);
  int next_artificial = num_vars_ + num_rows_;
  for (int i = 0; i < num_rows_; ++i) {
    const double sign = lp.rhs[i] < 0.0 ? -1.0 : 1.0;
    for (int j = 0; j < num_vars_; ++j) at(i, j) = sign * lp.rows[i][j];
    at(i, num_vars_ + i) = sign;
    rhs(i) = sign * lp.rhs[i];
    if (sign < 0.0) {
      at(i, next_artificial) = 1.0;
      artificial_row_.push_back(i);
      basis_[i] = next_artificial++;
    } else {
      basis_[i] = num_vars_ + i;
    }
  }
  iterations_ = 0;
  degenerate_pivots_ = 0;
}

void SimplexSolver::pivot(int row, int col) {
  const double inv = 1.0 / at(row, col);
  double* pivot_row = &tableau_[static_cast<std::size_t>(row) * width_];
  for (int j = 0; j < width_; ++j) pivot_row[j] *= inv;
  pivot_row[col] = 1.0;
  for (int i = 0; i < num_rows_; ++i) {
    if (i == row) continue;
    double* target = &tableau_[static_cast<std::size_t>(i) * width_];
    const double factor = target[col];
    if (factor == 0.0) continue;
    for (int j = 0; j < width_; ++j) target[j] -= factor * pivot_row[j];
    target[col] = 0.0;
  }
  if (!reduced_.empty()) {
    const double factor = reduced_[col];
    if (factor != 0.0) {
      for (int j = 0; j < num_cols_; ++j) reduced_[j] -= factor * pivot_row[j];
      reduced_[col] = 0.0;
    }
  }
  basis_[row] = col;
}

void SimplexSolver::compute_reduced_costs() {
  reduced_ = cost_;
  for (int i = 0; i < num_rows_; ++i) {
    const double cb = cost_[basis_[i]];
    if (cb == 0.0) continue;
    const double* row = &tableau_[static_cast<std::size_t>(i) * width_];
    for (int j = 0; j < num_cols_; ++j) reduced_[j] -= cb * row[j];
  }
  for (int i = 0; i < num_rows_; ++i) reduced_[basis_[i]] = 0.0;
}

bool SimplexSolver::iterate(bool allow_artificials) {
  const int bland_threshold = 2 * (num_rows_ + num_vars_);
  const int iteration_cap = 100000 + 200 * (num_rows_ + num_cols_);
  while (true) {
    const bool bland = degenerate_pivots_ > bland_threshold;
    int entering = -1;
    double best = kOptimalityTolerance;
    for (int j = 0; j < num_cols_; ++j) {
      if (blocked_[j] || (!allow_artificials && is_artificial(j))) continue;
      if (reduced_[j] > best) {
        entering = j;
        if (bland) break;
        best = reduced_[j];
      }
    }
    if (entering < 0) return true;

    int leaving = -1;
    double best_ratio = 0.0;
    double best_pivot = 0.0;
    for (int i = 0; i < num_rows_; ++i) {
      const double a = at(i, entering);
      if (a <= kPivotTolerance) continue;
      const double ratio = std::max(0.0, rhs(i)) / a;
      if (leaving < 0 || ratio < best_ratio - 1e-12) {
        leaving = i;
        best_ratio = ratio;
        best_pivot = a;
      } else if (ratio <= best_ratio + 1e-12) {
        const bool better = bland ? basis_[i] < basis_[leaving] : a > best_pivot;
        if (better) {
          leaving = i;
          best_ratio = std::min(best_ratio, ratio);
          best_pivot = a;
        }
      }
    }
    if (leaving < 0) return false;
    if (best_ratio <= 1e-12) ++degenerate_pivots_;
    const int left = basis_[leaving];
    pivot(leaving, entering);
    if (is_artificial(left)) blocked_[left] = 1;
    if (++iterations_ > iteration_cap) {
      throw StructuralError("simplex exceeded its iteration cap");
    }
  }
}

double SimplexSolver::primal_infeasibility() const {
  double worst = 0.0;
  for (int i = 0; i < num_rows_; ++i) {
    const double value = tableau_[static_cast<std::size_t>(i) * width_ + num_cols_];
    if (value < 0.0) worst = std::max(worst, -value);
    if (is_artificial(basis_[i])) worst = std::max(worst, std::abs(value));
  }
  return worst;
}

void SimplexSolver::drive_out_artificials() {
  for (int i = 0; i < num_rows_; ++i) {
    if (!is_artificial(basis_[i])) continue;
    int best_col = -1;
    double best_abs = kPivotTolerance;
    for (int j = 0; j < num_vars_ + num_rows_; ++j) {
      const double a = std::abs(at(i, j));
      if (a > best_abs) {
        best_abs = a;
        best_col = j;
      }
    }
    // No candidate: the row is redundant and the artificial stays basic at 0.
    if (best_col < 0) continue;
    rhs(i) = 0.0;
    const int left = basis_[i];
    pivot(i, best_col);
    blocked_[left] = 1;
  }
}

bool SimplexSolver::install_basis(std::span<const BasisEntry> warm_basis) {
  if (static_cast<int>(warm_basis.size()) != num_rows_) return false;
  std::vector<int> wanted;
  std::vector<char> is_wanted(num_cols_, 0);
  for (BasisEntry entry : warm_basis) {
    const int col = entry >= 0 ? entry : num_vars_ + (-entry - 1);
    if (entry >= num_vars_ || col < 0 || col >= num_vars_ + num_rows_) return false;
    if (is_wanted[col]) return false;
    is_wanted[col] = 1;
    wanted.push_back(col);
  }
  for (int col : wanted) {
    if (std::find(basis_.begin(), basis_.end(), col) != basis_.end()) continue;
    int row = -1;
    double best_abs = 1e-9;
    for (int i = 0; i < num_rows_; ++i) {
      if (is_wanted[basis_[i]]) continue;
      const double a = std::abs(at(i, col));
      if (a > best_abs) {
        best_abs = a;
        row = i;
      }
    }
    if (row < 0) return false;
    pivot(row, col);
  }
  for (int i = 0; i < num_rows_; ++i) {
    if (rhs(i) < -kFeasibilityTolerance) return false;
    if (is_artificial(basis_[i]) && rhs(i) > kFeasibilityTolerance) return false;
  }
  for (int i = 0; i < num_rows_; ++i) rhs(i) = std::max(0.0, rhs(i));
  return true;
}

LpResult SimplexSolver::solve(const LinearProgram& lp,
                              std::span<const BasisEntry> warm_basis) {
  lp.validate();
  LpResult result;
  build(lp);
  reduced_.clear();

  bool warm = false;
  if (!warm_basis.empty()) {
    warm = install_basis(warm_basis);
    if (!warm) build(lp);
  }

  if (!warm) {
    cost_.assign(num_cols_, 0.0);
    for (int j = num_vars_ + num_rows_; j < num_cols_; ++j) cost_[j] = -1.0;
    compute_reduced_costs();
    iterate(/*allow_artificials=*/true);
    double artificial_sum = 0.0;
    for (int i = 0; i < num_rows_; ++i) {
      if (is_artificial(basis_[i])) artificial_sum += std::max(0.0, rhs(i));
    }
    if (artificial_sum > kFeasibilityTolerance) {
      result.status = LpStatus::kInfeasible;
      result.iterations = iterations_;
      return result;
    }
  }
  drive_out_artificials();
  for (int j = num_vars_ + num_rows_; j < num_cols_; ++j) blocked_[j] = 1;

  cost_.assign(num_cols_, 0.0);
  for (int j = 0; j < num_vars_; ++j) cost_[j] = lp.objective[j];
  compute_reduced_costs();
  const bool bounded = iterate(/*allow_artificials=*/false);
  result.iterations = iterations_;
  result.warm_started = warm;
  if (!bounded) {
    result.status = LpStatus::kUnbounded;
    return result;
  }

  result.status = LpStatus::kOptimal;
  result.x.assign(num_vars_, 0.0);
  result.basis.resize(num_rows_);
  for (int i = 0; i < num_rows_; ++i) {
    const int col = basis_[i];
    if (col < num_vars_) result.x[col] = std::max(0.0, rhs(i));
    if (col < num_vars_) {
      result.basis[i] = col;
    } else if (is_artificial(col)) {
      result.basis[i] = -artificial_row_[col - num_vars_ - num_rows_] - 1;
    } else {
      result.basis[i] = -(col - num_vars_) - 1;
    }
  }
  result.objective = 0.0;
  for (int j = 0; j < num_vars_; ++j) result.objective += lp.objective[j] * result.x[j];
  result.duals.assign(num_rows_, 0.0);
  for (int i = 0; i < num_rows_; ++i) {
    result.duals[i] = std::max(0.0, -reduced_[num_vars_ + i]);
  }
  return result;
}

LpResult solve_lp(const LinearProgram& lp, std::span<const BasisEntry> warm_basis) {
  SimplexSolver solver;
  return solver.solve(lp, warm_basis);
}

}  // namespace pcbpack
