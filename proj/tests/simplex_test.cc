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

#include <random>

#include "gtest/gtest.h"
#include "lp_oracle.h"
#include "pcbpack/model.h"

namespace pcbpack {
namespace {

using testing::duality_residuals;
using testing::enumerate_vertices;
using testing::random_lp;

TEST(SimplexTest, LowerBoundActive) {
  const LinearProgram lp{{-1.0}, {{-1.0}, {1.0}}, {-2.0, 3.0}};
  const LpResult result = solve_lp(lp);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.x[0], 2.0, 1e-9);
  EXPECT_NEAR(result.objective, -2.0, 1e-9);
  EXPECT_NEAR(result.duals[0], 1.0, 1e-9);
  EXPECT_NEAR(result.duals[1], 0.0, 1e-9);
}

TEST(SimplexTest, EmptyRange) {
  const LinearProgram lp{{-1.0}, {{-1.0}, {1.0}}, {-5.0, 3.0}};
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kInfeasible);
}

TEST(SimplexTest, ObjectivePushesToZero) {
  const LinearProgram lp{{-1.0, -1.0}, {{-1.0, 0.0}, {0.0, 1.0}}, {0.0, 1.0}};
  const LpResult result = solve_lp(lp);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.x[0], 0.0, 1e-9);
  EXPECT_NEAR(result.x[1], 0.0, 1e-9);
  EXPECT_NEAR(result.objective, 0.0, 1e-9);
}

TEST(SimplexTest, Unbounded) {
  const LinearProgram lp{{1.0, 0.0}, {{0.0, 1.0}}, {1.0}};
  EXPECT_EQ(solve_lp(lp).status, LpStatus::kUnbounded);
}

TEST(SimplexTest, NoRows) {
  const LinearProgram lp{{-1.0, -2.0}, {}, {}};
  const LpResult result = solve_lp(lp);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_EQ(result.objective, 0.0);
}

TEST(SimplexTest, DimensionMismatch) {
  const LinearProgram lp{{-1.0}, {{1.0, 2.0}}, {3.0}};
  EXPECT_THROW(solve_lp(lp), StructuralError);
  const LinearProgram short_rhs{{-1.0}, {{1.0}}, {}};
  EXPECT_THROW(solve_lp(short_rhs), StructuralError);
}

TEST(SimplexTest, DegenerateCycleProneLp) {
  // Beale's example, known to cycle under plain Dantzig pricing.
  const LinearProgram lp{{0.75, -150.0, 0.02, -6.0},
                         {{0.25, -60.0, -0.04, 9.0}, {0.5, -90.0, -0.02, 3.0}, {0.0, 0.0, 1.0, 0.0}},
                         {0.0, 0.0, 1.0}};
  const LpResult result = solve_lp(lp);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.objective, 0.05, 1e-9);
}

TEST(SimplexTest, AgreesWithVertexEnumeration) {
  std::mt19937_64 rng(17);
  int optimal = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const LinearProgram lp = random_lp(rng);
    const LpResult result = solve_lp(lp);
    const auto oracle = enumerate_vertices(lp);
    ASSERT_EQ(result.status, oracle.status) << "trial " << trial;
    if (result.status != LpStatus::kOptimal) continue;
    ++optimal;
    EXPECT_NEAR(result.objective, oracle.objective, 1e-6);
    const auto r = duality_residuals(lp, result);
    EXPECT_LE(r.primal_infeasibility, kFeasibilityTolerance);
    EXPECT_LE(r.dual_gap, kDualityTolerance);
    EXPECT_LE(r.slackness, kDualityTolerance);
    EXPECT_LE(r.reduced_cost, kOptimalityTolerance);
    EXPECT_LE(r.reduced_cost_times_x, kDualityTolerance);
    EXPECT_GE(r.min_dual, 0.0);
  }
  EXPECT_GT(optimal, 100);
}

TEST(SimplexTest, Deterministic) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const LinearProgram lp = random_lp(rng);
    const LpResult a = solve_lp(lp);
    const LpResult b = solve_lp(lp);
    EXPECT_EQ(a.status, b.status);
    EXPECT_EQ(a.x, b.x);
    EXPECT_EQ(a.duals, b.duals);
    EXPECT_EQ(a.basis, b.basis);
    EXPECT_EQ(a.objective, b.objective);
  }
}

TEST(SimplexTest, WarmStartAfterAppendingColumns) {
  std::mt19937_64 rng(29);
  std::uniform_int_distribution<int> coef(0, 4);
  int warm = 0;
  for (int trial = 0; trial < 200; ++trial) {
    // Covering-style LP like a master: max -sum x, -A x <= -from, A x <= to.
    const int types = 3;
    LinearProgram lp;
    std::vector<std::vector<int>> columns;
    for (int t = 0; t < types; ++t) {
      std::vector<int> col(types, 0);
      col[t] = 1 + coef(rng);
      columns.push_back(col);
    }
    std::vector<int> from(types), to(types);
    for (int t = 0; t < types; ++t) {
      from[t] = coef(rng) * 3;
      to[t] = from[t] + coef(rng) * 2 + columns[t][t];
    }
    auto build = [&] {
      LinearProgram out;
      out.objective.assign(columns.size(), -1.0);
      for (int t = 0; t < types; ++t) {
        std::vector<double> lower, upper;
        for (const auto& col : columns) {
          lower.push_back(-col[t]);
          upper.push_back(col[t]);
        }
        out.rows.push_back(lower);
        out.rhs.push_back(-from[t]);
        out.rows.push_back(upper);
        out.rhs.push_back(to[t]);
      }
      return out;
    };
    const LpResult first = solve_lp(build());
    ASSERT_EQ(first.status, LpStatus::kOptimal);
    for (int extra = 0; extra < 2; ++extra) {
      std::vector<int> col(types);
      for (int& c : col) c = coef(rng);
      columns.push_back(col);
    }
    lp = build();
    const LpResult warm_result = solve_lp(lp, first.basis);
    const LpResult cold_result = solve_lp(lp);
    ASSERT_EQ(warm_result.status, LpStatus::kOptimal);
    EXPECT_NEAR(warm_result.objective, cold_result.objective, 1e-9);
    const auto r = duality_residuals(lp, warm_result);
    EXPECT_LE(r.dual_gap, kDualityTolerance);
    EXPECT_LE(r.reduced_cost, kOptimalityTolerance);
    warm += warm_result.warm_started ? 1 : 0;
  }
  EXPECT_GT(warm, 0);
}

TEST(SimplexTest, UnusableWarmBasisFallsBack) {
  const LinearProgram lp{{-1.0}, {{-1.0}, {1.0}}, {-2.0, 3.0}};
  const std::vector<BasisEntry> bogus = {7, 7};
  const LpResult result = solve_lp(lp, bogus);
  ASSERT_EQ(result.status, LpStatus::kOptimal);
  EXPECT_NEAR(result.x[0], 2.0, 1e-9);
}

}  // namespace
}  // namespace pcbpack
