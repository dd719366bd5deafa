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

#ifndef PCBPACK_SIMPLEX_H_
#define PCBPACK_SIMPLEX_H_

#include <span>
#include <vector>

namespace pcbpack {

// maximize c^T x  subject to  A x <= b,  x >= 0.
struct LinearProgram {
  std::vector<double> objective;
  std::vector<std::vector<double>> rows;
  std::vector<double> rhs;

  int num_vars() const { return static_cast<int>(objective.size()); }
  int num_rows() const { return static_cast<int>(rows.size()); }

  // Throws StructuralError on inconsistent dimensions or non-finite data.
  void validate() const;
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded };

const char* to_string(LpStatus status);

// A basic variable that keeps its identity when columns are appended:
// k >= 0 is structural column k, k < 0 is the slack of row (-k - 1).
using BasisEntry = int;

struct LpResult {
  LpStatus status = LpStatus::kInfeasible;
  std::vector<double> x;
  double objective = 0.0;
  // One non-negative price per row.
  std::vector<double> duals;
  // Basic variable per row at termination.
  std::vector<BasisEntry> basis;
  int iterations = 0;
  bool warm_started = false;
};

inline constexpr double kFeasibilityTolerance = 1e-7;
inline constexpr double kOptimalityTolerance = 1e-9;
inline constexpr double kDualityTolerance = 1e-6;

// Dense two-phase primal simplex. Dantzig pricing, switching to Bland's rule
// after 2 * (rows + cols) degenerate pivots. A basis from an earlier solve of a
// column-extended LP may be passed to skip phase 1; an unusable warm basis
// falls back to a cold start.
class SimplexSolver {
 public:
  LpResult solve(const LinearProgram& lp, std::span<const BasisEntry> warm_basis = {});

 private:
  void build(const LinearProgram& lp);
  void pivot(int row, int col);
  void compute_reduced_costs();
  // Returns false if the LP is unbounded in the current phase.
  bool iterate(bool allow_artificials);
  bool install_basis(std::span<const BasisEntry> warm_basis);
  void drive_out_artificials();
  double& at(int row, int col) { return tableau_[row * width_ + col]; }
  double at(int row, int col) const { return tableau_[row * width_ + col]; }
  double& rhs(int row) { return tableau_[row * width_ + num_cols_]; }
  double primal_infeasibility() const;
  bool is_artificial(int col) const { return col >= num_vars_ + num_rows_; }

  int num_vars_ = 0;
  int num_rows_ = 0;
  int num_cols_ = 0;
  int width_ = 0;
  std::vector<double> tableau_;
  std::vector<int> basis_;
  std::vector<int> artificial_row_;
  std::vector<double> cost_;
  std::vector<double> reduced_;
  std::vector<char> blocked_;
  int iterations_ = 0;
  int degenerate_pivots_ = 0;
};

LpResult solve_lp(const LinearProgram& lp, std::span<const BasisEntry> warm_basis = {});

}  // namespace pcbpack

#endif  // PCBPACK_SIMPLEX_H_
