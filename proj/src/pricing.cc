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

#include "pcbpack/pricing.h"

#include <algorithm>
#include <future>
#include <numeric>
#include <thread>

#include "pcbpack/placement.h"

namespace pcbpack {

double reduced_cost(const Counts& counts, const DualPrices& duals) {
  double value = -1.0;
  for (std::size_t k = 0; k < duals.types.size(); ++k) {
    value += (duals.pi1[k] - duals.pi2[k]) * count_at(counts, duals.types[k]);
  }
  return value;
}

namespace {

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<PricingSequence> make_sequences(const DualPrices& duals, const NodeProblem& node,
                                            const SolverConfig& config,
                                            std::mt19937_64& rng) {
  const std::vector<TypeIndex>& types = node.active;
  std::vector<double> score(types.size());
  std::vector<double> density(types.size());
  for (std::size_t k = 0; k < types.size(); ++k) {
    score[k] = duals.score(types[k]);
    density[k] = score[k] / static_cast<double>(node.registry->area(types[k]));
  }

  auto sorted_by = [&](const std::vector<double>& key, SequenceOrigin origin) {
    std::vector<std::size_t> order(types.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    PricingSequence sequence;
    sequence.origin = origin;
    for (std::size_t k : order) sequence.types.push_back(types[k]);
    return sequence;
  };

  std::vector<PricingSequence> sequences;
  sequences.push_back(sorted_by(score, SequenceOrigin::kScoreSorted));
  sequences.push_back(sorted_by(density, SequenceOrigin::kDensitySorted));
  for (int r = 0; r < config.pricing_random_sequences; ++r) {
    std::vector<std::size_t> remaining(types.size());
    std::iota(remaining.begin(), remaining.end(), 0);
    PricingSequence sequence;
    sequence.origin = SequenceOrigin::kRandomized;
    sequence.random_index = r;
    while (!remaining.empty()) {
      double total = 0.0;
      for (std::size_t k : remaining) total += std::max(score[k], kSamplingFloor);
      const double target = uniform01(rng) * total;
      double running = 0.0;
      std::size_t pick = remaining.size() - 1;
      for (std::size_t pos = 0; pos < remaining.size(); ++pos) {
        running += std::max(score[remaining[pos]], kSamplingFloor);
        if (target < running) {
          pick = pos;
          break;
        }
      }
      sequence.types.push_back(types[remaining[pick]]);
      remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(pick));
    }
    sequences.push_back(std::move(sequence));
  }
  return sequences;
}

std::optional<Column> greedy_fill(std::span<const TypeIndex> sequence,
                                  const NodeProblem& node, const Instance& instance,
                                  const DualPrices* duals, FillMode mode) {
  const TypeRegistry& registry = *node.registry;
  BottomLeftPacker packer({instance.bin_width, instance.bin_height}, instance.spacing);
  Counts counts;
  Layout witness;

  // Adds one item of `type` if the rules and the placement allow it.
  auto try_add = [&](TypeIndex type) {
    if (count_at(counts, type) >= node.to_of(type) || !node.admits_increment(counts, type)) {
      return false;
    }
    BottomLeftPacker trial = packer;
    std::vector<Placement> added;
    for (TypeIndex original : registry.rectangle_sequence(type)) {
      const ItemType& item = instance.item_types[original];
      auto r = trial.place(item.width, item.height);
      if (!r) return false;
      added.push_back({original, r->x, r->y});
    }
    packer = std::move(trial);
    witness.placements.insert(witness.placements.end(), added.begin(), added.end());
    if (static_cast<int>(counts.size()) <= type) counts.resize(type + 1, 0);
    ++counts[type];
    return true;
  };

  std::vector<TypeIndex> open;
  for (TypeIndex type : sequence) {
    if (!node.is_active(type)) continue;
    if (duals && duals->score(type) < 0.0) continue;
    open.push_back(type);
  }
  if (mode == FillMode::kExhaust) {
    for (TypeIndex type : open) {
      while (try_add(type)) {
      }
    }
  } else {
    while (!open.empty()) {
      std::erase_if(open, [&](TypeIndex type) { return !try_add(type); });
    }
  }
  normalize_counts(counts);
  if (counts.empty()) return std::nullopt;
  Column column;
  column.counts = std::move(counts);
  column.witness = std::move(witness);
  column.node_scope = node.id;
  return column;
}

std::vector<Column> price(const NodeProblem& node, const DualPrices& duals,
                          const Instance& instance, const SolverConfig& config,
                          std::mt19937_64& rng) {
  const auto sequences = make_sequences(duals, node, config, rng);
  constexpr std::size_t kModes = 2;
  std::vector<std::optional<Column>> fills(kModes * sequences.size());
  auto fill = [&](std::size_t s) {
    const FillMode mode = s % kModes == 0 ? FillMode::kExhaust : FillMode::kRoundRobin;
    fills[s] = greedy_fill(sequences[s / kModes].types, node, instance, &duals, mode);
  };
  int threads = config.pricing_threads > 0
                    ? config.pricing_threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::max(1, std::min<int>(threads, static_cast<int>(fills.size())));
  if (threads == 1) {
    for (std::size_t s = 0; s < fills.size(); ++s) fill(s);
  } else {
    std::vector<std::future<void>> workers;
    for (int t = 0; t < threads; ++t) {
      workers.push_back(std::async(std::launch::async, [&, t] {
        for (std::size_t s = t; s < fills.size(); s += threads) fill(s);
      }));
    }
    for (auto& worker : workers) worker.get();
  }

  std::vector<Column> improving;
  for (auto& column : fills) {
    if (!column || reduced_cost(column->counts, duals) <= kPricingTolerance) continue;
    if (node.pool_contains(column->counts)) continue;
    const bool duplicate = std::any_of(improving.begin(), improving.end(), [&](const Column& c) {
      return counts_equal(c.counts, column->counts);
    });
    if (!duplicate) improving.push_back(std::move(*column));
  }
  std::sort(improving.begin(), improving.end(),
            [](const Column& a, const Column& b) { return a.counts < b.counts; });
  return improving;
}

}  // namespace pcbpack
