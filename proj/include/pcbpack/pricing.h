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

#ifndef PCBPACK_PRICING_H_
#define PCBPACK_PRICING_H_

#include <optional>
#include <random>
#include <span>
#include <vector>

#include "pcbpack/master.h"
#include "pcbpack/model.h"
#include "pcbpack/node_problem.h"

namespace pcbpack {

enum class SequenceOrigin { kScoreSorted, kDensitySorted, kRandomized };

struct PricingSequence {
  std::vector<TypeIndex> types;
  SequenceOrigin origin = SequenceOrigin::kScoreSorted;
  int random_index = -1;
};

// kExhaust fills each type as far as it goes before the next; kRoundRobin
// adds one item per type per pass until no type can grow.
enum class FillMode { kExhaust, kRoundRobin };

inline constexpr double kPricingTolerance = 1e-9;
inline constexpr double kSamplingFloor = 1e-9;

// -1 + sum_j (pi1_j - pi2_j) * counts_j.
double reduced_cost(const Counts& counts, const DualPrices& duals);

// Score order, score-per-area order, then `pricing_random_sequences` orders
// sampled without replacement with weights max(score, kSamplingFloor).
std::vector<PricingSequence> make_sequences(const DualPrices& duals, const NodeProblem& node,
                                            const SolverConfig& config,
                                            std::mt19937_64& rng);

// Greedy multiplicity fill: for each type in order, add items while the node
// rules allow it and the bottom-left placement of the accumulated multiset
// succeeds. With duals, types of negative score are skipped. Returns nullopt
// if nothing could be placed.
std::optional<Column> greedy_fill(std::span<const TypeIndex> sequence,
                                  const NodeProblem& node, const Instance& instance,
                                  const DualPrices* duals = nullptr,
                                  FillMode mode = FillMode::kExhaust);

// All distinct improving columns from one pricing round, both fill modes on
// every sequence, sorted by count vector. Empty means no improving column was found.
std::vector<Column> price(const NodeProblem& node, const DualPrices& duals,
                          const Instance& instance, const SolverConfig& config,
                          std::mt19937_64& rng);

}  // namespace pcbpack

#endif  // PCBPACK_PRICING_H_
