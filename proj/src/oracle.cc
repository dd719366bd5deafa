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

#include "pcbpack/oracle.h"

#include <algorithm>
#include <limits>
#include <map>
#include <memory>

#include "pcbpack/placement.h"

namespace pcbpack {
namespace {

long long vector_space(const std::vector<int>& caps) {
  long long size = 1;
  for (int cap : caps) {
    size *= static_cast<long long>(cap) + 1;
    if (size > kOracleMaxVectors) {
      throw OracleGuardError("oracle: more than 10^4 count vectors");
    }
  }
  return size;
}

// Visits every vector 0 <= v <= caps in mixed-radix order.
template <typename Visit>
void for_each_vector(const std::vector<int>& caps, Visit visit) {
  std::vector<int> current(caps.size(), 0);
  while (true) {
    visit(current);
    std::size_t k = 0;
    while (k < caps.size() && current[k] == caps[k]) current[k++] = 0;
    if (k == caps.size()) return;
    ++current[k];
  }
}

}  // namespace

std::optional<Layout> exact_fits(const Counts& original_counts, const Instance& instance) {
  const int d = instance.spacing;
  // Inflating every rectangle by d to the right and top gives pairwise
  // disjoint rectangles inside a (W + d) x (H + d) box.
  long long inflated = 0;
  std::vector<TypeIndex> order;
  for (std::size_t t = 0; t < original_counts.size(); ++t) {
    const ItemType& item = instance.item_types.at(t);
    inflated += static_cast<long long>(original_counts[t]) * (item.width + d) * (item.height + d);
    for (int c = 0; c < original_counts[t]; ++c) order.push_back(static_cast<TypeIndex>(t));
  }
  if (inflated > static_cast<long long>(instance.bin_width + d) * (instance.bin_height + d)) {
    return std::nullopt;
  }
  if (static_cast<int>(order.size()) > kOracleMaxRectangles) {
    throw OracleGuardError("oracle: more than 8 rectangles in one candidate");
  }
  std::vector<Size> sizes(order.size());
  do {
    for (std::size_t k = 0; k < order.size(); ++k) {
      const ItemType& item = instance.item_types[order[k]];
      sizes[k] = {item.width, item.height};
    }
    auto rects = bottom_left_place(sizes, {instance.bin_width, instance.bin_height}, d);
    if (rects) {
      Layout layout;
      for (std::size_t k = 0; k < order.size(); ++k) {
        layout.placements.push_back({order[k], (*rects)[k].x, (*rects)[k].y});
      }
      return layout;
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return std::nullopt;
}

std::vector<Counts> exact_max_fill(const Counts& caps, const Instance& instance) {
  std::vector<int> bounds(instance.num_types(), 0);
  for (int t = 0; t < instance.num_types(); ++t) bounds[t] = count_at(caps, t);
  vector_space(bounds);
  std::vector<Counts> feasible;
  for_each_vector(bounds, [&](const std::vector<int>& v) {
    if (exact_fits(v, instance)) feasible.push_back(v);
  });
  std::vector<Counts> maximal;
  for (const Counts& v : feasible) {
    const bool dominated = std::any_of(feasible.begin(), feasible.end(), [&](const Counts& u) {
      if (u == v) return false;
      for (std::size_t k = 0; k < v.size(); ++k) {
        if (u[k] < v[k]) return false;
      }
      return true;
    });
    if (!dominated) maximal.push_back(normalized(v));
  }
  return maximal;
}

std::vector<OraclePattern> exact_patterns(const NodeProblem& node, const Instance& instance) {
  const TypeRegistry& registry = *node.registry;
  std::vector<int> bounds;
  for (TypeIndex type : node.active) bounds.push_back(node.to_of(type));
  vector_space(bounds);
  std::map<Counts, std::optional<Layout>> memo;
  std::vector<OraclePattern> patterns;
  for_each_vector(bounds, [&](const std::vector<int>& v) {
    Counts counts;
    for (std::size_t k = 0; k < v.size(); ++k) {
      if (v[k] == 0) continue;
      const TypeIndex type = node.active[k];
      if (static_cast<int>(counts.size()) <= type) counts.resize(type + 1, 0);
      counts[type] = v[k];
    }
    if (counts.empty() || !node.admits(counts)) return;
    Counts original = expand_counts(counts, registry);
    original.resize(instance.num_types(), 0);
    auto it = memo.find(original);
    if (it == memo.end()) it = memo.emplace(original, exact_fits(original, instance)).first;
    if (it->second) patterns.push_back({counts, *it->second});
  });
  return patterns;
}

std::optional<OracleResult> exact_solve_node(const NodeProblem& node, const Instance& instance) {
  const std::vector<TypeIndex>& types = node.active;
  const std::size_t k = types.size();
  std::vector<long long> radix(k), stride(k);
  long long states = 1;
  int bin_bound = 0;
  for (std::size_t t = 0; t < k; ++t) {
    radix[t] = node.to_of(types[t]) + 1;
    stride[t] = states;
    states *= radix[t];
    if (states > kOracleMaxVectors) throw OracleGuardError("oracle: state space too large");
    bin_bound += node.from_of(types[t]);
  }
  // Inactive types must have from == 0 for the node to be meaningful.
  OracleResult best;
  if (bin_bound == 0) return best;

  const std::vector<OraclePattern> patterns = exact_patterns(node, instance);
  const int p = static_cast<int>(patterns.size());
  std::vector<std::vector<int>> vec(p, std::vector<int>(k));
  for (int l = 0; l < p; ++l) {
    for (std::size_t t = 0; t < k; ++t) vec[l][t] = count_at(patterns[l].counts, types[t]);
  }

  constexpr int kUnreached = std::numeric_limits<int>::max() / 2;
  const long long layer = static_cast<long long>(bin_bound + 1) * states;
  auto index = [&](int b, long long s) { return static_cast<long long>(b) * states + s; };
  std::vector<int> dp(layer, kUnreached), next;
  std::vector<std::vector<unsigned char>> choice(p);
  dp[index(0, 0)] = 0;

  auto decode = [&](long long s, std::size_t t) { return static_cast<int>((s / stride[t]) % radix[t]); };

  for (int l = 0; l < p; ++l) {
    next = dp;
    choice[l].assign(layer, 0);
    for (int b = 0; b < bin_bound; ++b) {
      for (long long s = 0; s < states; ++s) {
        const int base = dp[index(b, s)];
        if (base >= kUnreached) continue;
        long long target = s;
        for (int m = 1; b + m <= bin_bound && m < 256; ++m) {
          bool inside = true;
          for (std::size_t t = 0; t < k; ++t) {
            if (decode(target, t) + vec[l][t] >= radix[t]) {
              inside = false;
              break;
            }
          }
          if (!inside) break;
          for (std::size_t t = 0; t < k; ++t) target += vec[l][t] * stride[t];
          const long long at = index(b + m, target);
          if (base + 1 < next[at]) {
            next[at] = base + 1;
            choice[l][at] = static_cast<unsigned char>(m);
          }
        }
      }
    }
    dp.swap(next);
  }

  auto in_range = [&](long long s) {
    for (std::size_t t = 0; t < k; ++t) {
      const int v = decode(s, t);
      if (v < node.from_of(types[t]) || v > node.to_of(types[t])) return false;
    }
    return true;
  };
  for (int b = 0; b <= bin_bound; ++b) {
    int best_patterns = kUnreached;
    long long best_state = -1;
    for (long long s = 0; s < states; ++s) {
      if (dp[index(b, s)] < best_patterns && in_range(s)) {
        best_patterns = dp[index(b, s)];
        best_state = s;
      }
    }
    if (best_state < 0) continue;
    best.bins = b;
    best.patterns = best_patterns;
    int cur_b = b;
    long long cur_s = best_state;
    for (int l = p - 1; l >= 0; --l) {
      const int m = choice[l][index(cur_b, cur_s)];
      if (m == 0) continue;
      best.assignment.push_back({patterns[l], m});
      cur_b -= m;
      for (std::size_t t = 0; t < k; ++t) cur_s -= static_cast<long long>(m) * vec[l][t] * stride[t];
    }
    std::reverse(best.assignment.begin(), best.assignment.end());
    return best;
  }
  return std::nullopt;
}

OracleResult exact_solve(const Instance& instance) {
  if (instance.num_types() > 3) throw OracleGuardError("oracle: more than 3 item types");
  for (const ItemType& item : instance.item_types) {
    if (item.to > 4) throw OracleGuardError("oracle: to > 4");
  }
  auto registry = std::make_shared<TypeRegistry>(instance);
  const NodeProblem root = make_root_node(instance, registry);
  auto result = exact_solve_node(root, instance);
  if (!result) throw StructuralError("oracle: instance without integral solution");
  return *result;
}

}  // namespace pcbpack
