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

#include "pcbpack/branching.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <vector>

#include "pcbpack/placement.h"
#include "pcbpack/pricing.h"

namespace pcbpack {

int NodeProblem::from_of(TypeIndex type) const {
  return type >= 0 && type < static_cast<int>(from.size()) ? from[type] : 0;
}

int NodeProblem::to_of(TypeIndex type) const {
  return type >= 0 && type < static_cast<int>(to.size()) ? to[type] : 0;
}

void NodeProblem::set_range(TypeIndex type, int from_value, int to_value) {
  if (from_value < 0 || from_value > to_value) {
    throw StructuralError("node multiplicities must satisfy 0 <= from <= to");
  }
  if (static_cast<int>(from.size()) <= type) {
    from.resize(type + 1, 0);
    to.resize(type + 1, 0);
  }
  from[type] = from_value;
  to[type] = to_value;
}

bool NodeProblem::is_active(TypeIndex type) const {
  return std::binary_search(active.begin(), active.end(), type);
}

bool NodeProblem::in_conflict(TypeIndex a, TypeIndex b) const {
  if (a > b) std::swap(a, b);
  return conflicts.count({a, b}) > 0;
}

bool NodeProblem::admits(const Counts& counts) const {
  for (std::size_t t = 0; t < counts.size(); ++t) {
    const int c = counts[t];
    if (c == 0) continue;
    const TypeIndex type = static_cast<TypeIndex>(t);
    if (c < 0 || !is_active(type) || c > to_of(type)) return false;
    if (c > 1 && caps.count(type)) return false;
  }
  for (const auto& [a, b] : conflicts) {
    if (count_at(counts, a) > 0 && count_at(counts, b) > 0) return false;
  }
  return true;
}

bool NodeProblem::admits_increment(const Counts& counts, TypeIndex type) const {
  if (!is_active(type)) return false;
  const int current = count_at(counts, type);
  if (current + 1 > to_of(type)) return false;
  if (current >= 1 && caps.count(type)) return false;
  for (const auto& [a, b] : conflicts) {
    if (a == type && count_at(counts, b) > 0) return false;
    if (b == type && count_at(counts, a) > 0) return false;
  }
  return true;
}

bool NodeProblem::pool_contains(const Counts& counts) const {
  return std::any_of(pool.begin(), pool.end(),
                     [&](const Column& c) { return counts_equal(c.counts, counts); });
}

bool NodeProblem::add_column(Column column) {
  normalize_counts(column.counts);
  if (pool_contains(column.counts)) return false;
  pool.push_back(std::move(column));
  return true;
}

NodeProblem make_root_node(const Instance& instance, std::shared_ptr<TypeRegistry> registry) {
  NodeProblem root;
  root.registry = std::move(registry);
  for (TypeIndex t = 0; t < instance.num_types(); ++t) {
    const ItemType& item = instance.item_types[t];
    root.set_range(t, item.from, item.to);
    if (item.to > 0) root.active.push_back(t);
  }
  return root;
}

AffinityMatrix affinity(const NodeProblem& node, std::span<const double> x) {
  if (x.size() != node.pool.size()) {
    throw std::invalid_argument("affinity: one value per pooled column expected");
  }
  AffinityMatrix rho;
  rho.types = node.active;
  const std::size_t k = rho.types.size();
  rho.values.assign(k * k, 0.0);
  for (std::size_t l = 0; l < node.pool.size(); ++l) {
    if (x[l] == 0.0) continue;
    const Counts& counts = node.pool[l].counts;
    for (std::size_t a = 0; a < k; ++a) {
      const double ca = count_at(counts, rho.types[a]);
      if (ca == 0.0) continue;
      rho.at(a, a) += ca * (ca - 1.0) / 2.0 * x[l];
      for (std::size_t b = a + 1; b < k; ++b) {
        const double cb = count_at(counts, rho.types[b]);
        if (cb == 0.0) continue;
        rho.at(a, b) += ca * cb * x[l];
        rho.at(b, a) = rho.at(a, b);
      }
    }
  }
  return rho;
}

namespace {

double fractional_part(double value) {
  const double nearest = std::round(value);
  if (std::abs(value - nearest) <= kIntegralityTolerance) return 0.0;
  return value - std::floor(value);
}

}  // namespace

BranchPair select_branching_pair(const NodeProblem& node, const RmpSolveOutcome& outcome) {
  const AffinityMatrix rho = affinity(node, outcome.x);
  const std::size_t k = rho.types.size();
  double best = kIntegralityTolerance;
  std::optional<BranchPair> chosen;
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = a; b < k; ++b) {
      const double value = rho.at(a, b);
      const double distance = std::abs(value - std::round(value));
      if (distance > best) {
        best = distance;
        chosen = BranchPair{rho.types[a], rho.types[b]};
      }
    }
  }
  if (chosen) return *chosen;

  // Area rule. A column qualifies if it mixes types or holds one uncapped
  // type that may appear more than once.
  const TypeRegistry& registry = *node.registry;
  int column = -1;
  double best_fraction = 0.0;
  for (std::size_t l = 0; l < node.pool.size(); ++l) {
    const Counts& counts = node.pool[l].counts;
    int distinct = 0;
    TypeIndex only = -1;
    for (std::size_t t = 0; t < counts.size(); ++t) {
      if (counts[t] > 0) {
        ++distinct;
        only = static_cast<TypeIndex>(t);
      }
    }
    const bool eligible =
        distinct >= 2 || (distinct == 1 && node.to_of(only) > 1 && !node.caps.count(only));
    if (!eligible) continue;
    const double fraction = fractional_part(outcome.x[l]);
    if (fraction > best_fraction) {
      best_fraction = fraction;
      column = static_cast<int>(l);
    }
  }
  if (column < 0) {
    throw BranchingStuck("branching stuck: fractional solution without an eligible column");
  }

  const Counts& counts = node.pool[column].counts;
  std::vector<std::pair<std::int64_t, TypeIndex>> by_area;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] == 0) continue;
    const TypeIndex type = static_cast<TypeIndex>(t);
    by_area.push_back({counts[t] * registry.area(type), type});
  }
  std::stable_sort(by_area.begin(), by_area.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  const TypeIndex i = by_area[0].second;
  if (node.to_of(i) > 1 && !node.caps.count(i)) return BranchPair{i, i};
  if (by_area.size() < 2) {
    throw BranchingStuck("branching stuck: no second type in the selected column");
  }
  return BranchPair{i, by_area[1].second};
}

void ensure_homogeneous_columns(NodeProblem& node, const Instance& instance) {
  for (TypeIndex type : node.active) {
    if (node.from_of(type) == 0) continue;
    const bool present = std::any_of(node.pool.begin(), node.pool.end(), [&](const Column& c) {
      for (std::size_t t = 0; t < c.counts.size(); ++t) {
        if (c.counts[t] > 0 && static_cast<TypeIndex>(t) != type) return false;
      }
      return count_at(c.counts, type) > 0;
    });
    if (present) continue;
    const TypeIndex sequence[] = {type};
    // A type the node rules exclude from every bin gets no column; the
    // master then reports the node infeasible.
    if (auto column = greedy_fill(sequence, node, instance)) node.add_column(std::move(*column));
  }
}

namespace {

NodeProblem make_child_shell(const NodeProblem& node, int child_id) {
  NodeProblem child = node;
  child.id = child_id;
  child.parent_id = node.id;
  child.depth = node.depth + 1;
  child.status = NodeStatus::kOpen;
  return child;
}

void drop_inadmissible(NodeProblem& child) {
  std::erase_if(child.pool, [&](const Column& c) { return !child.admits(c.counts); });
}

struct RuleSet {
  std::set<TypeIndex> caps;
  std::set<std::pair<TypeIndex, TypeIndex>> conflicts;
  bool operator==(const RuleSet&) const = default;
};

std::pair<TypeIndex, TypeIndex> ordered(TypeIndex a, TypeIndex b) {
  return {std::min(a, b), std::max(a, b)};
}

// A compound built from free items of i and j is bound by their rules, with
// the compound standing in for each constituent.
RuleSet inherited_rules(const NodeProblem& node, TypeIndex i, TypeIndex j,
                        TypeIndex compound) {
  RuleSet rules;
  const std::vector<TypeIndex> parts = i == j ? std::vector{i} : std::vector{i, j};
  for (TypeIndex part : parts) {
    const TypeIndex other = part == i ? j : i;
    if (node.caps.count(part)) {
      rules.caps.insert(compound);
      rules.conflicts.insert(ordered(compound, part));
    }
    for (const auto& [a, b] : node.conflicts) {
      if (a == part && b != other) rules.conflicts.insert(ordered(compound, b));
      if (b == part && a != other) rules.conflicts.insert(ordered(compound, a));
    }
  }
  return rules;
}

RuleSet rules_on(const NodeProblem& node, TypeIndex type) {
  RuleSet rules;
  if (node.caps.count(type)) rules.caps.insert(type);
  for (const auto& conflict : node.conflicts) {
    if (conflict.first == type || conflict.second == type) rules.conflicts.insert(conflict);
  }
  return rules;
}

bool mentioned(const NodeProblem& node, TypeIndex type) {
  const RuleSet rules = rules_on(node, type);
  return !rules.caps.empty() || !rules.conflicts.empty();
}

// The first placements of `layout` that cover `originals`.
Layout sub_layout(const Layout& layout, Counts originals) {
  Layout result;
  for (const Placement& placement : layout.placements) {
    if (count_at(originals, placement.type) > 0) {
      --originals[placement.type];
      result.placements.push_back(placement);
    }
  }
  return result;
}

}  // namespace

NodeProblem make_right_child(const NodeProblem& node, BranchPair pair, int child_id,
                             const Instance& instance) {
  NodeProblem child = make_child_shell(node, child_id);
  if (pair.i == pair.j) {
    child.caps.insert(pair.i);
  } else {
    child.conflicts.insert({std::min(pair.i, pair.j), std::max(pair.i, pair.j)});
  }
  drop_inadmissible(child);
  ensure_homogeneous_columns(child, instance);
  return child;
}

std::optional<NodeProblem> make_left_child(const NodeProblem& node, BranchPair pair,
                                           int child_id, const Instance& instance) {
  const TypeIndex i = pair.i;
  const TypeIndex j = pair.j;
  if (!node.is_active(i) || !node.is_active(j)) {
    throw std::invalid_argument("branching pair must consist of active types");
  }
  if (node.to_of(i) < (i == j ? 2 : 1) || node.to_of(j) < 1) {
    throw std::invalid_argument("branching pair multiplicities too small");
  }
  NodeProblem child = make_child_shell(node, child_id);
  TypeRegistry& registry = *child.registry;

  // An active variant is reused only when its items and the new one are bound
  // by the same rules.
  std::optional<TypeIndex> reused;
  std::optional<TypeIndex> idle;
  for (TypeIndex variant : registry.compound_variants(i, j)) {
    if (child.is_active(variant)) {
      if (!reused && rules_on(node, variant) == inherited_rules(node, i, j, variant)) {
        reused = variant;
      }
    } else if (!idle && !mentioned(node, variant)) {
      idle = variant;
    }
  }
  TypeIndex compound;
  if (reused) {
    compound = *reused;
    child.set_range(compound, child.from_of(compound) + 1, child.to_of(compound) + 1);
  } else {
    compound = idle ? *idle : registry.add_compound_variant(i, j);
    child.set_range(compound, 1, 1);
    child.active.insert(std::upper_bound(child.active.begin(), child.active.end(), compound),
                        compound);
    const RuleSet rules = inherited_rules(node, i, j, compound);
    child.caps.insert(rules.caps.begin(), rules.caps.end());
    child.conflicts.insert(rules.conflicts.begin(), rules.conflicts.end());
  }

  auto lower = [&](TypeIndex type) {
    child.set_range(type, std::max(0, child.from_of(type) - 1), child.to_of(type) - 1);
  };
  lower(i);
  lower(j);
  std::erase_if(child.active, [&](TypeIndex type) { return child.to_of(type) == 0; });

  Counts unit(compound + 1, 0);
  unit[compound] = 1;
  std::optional<Layout> unit_layout;

  std::vector<Column> adjusted;
  adjusted.reserve(child.pool.size());
  for (Column column : child.pool) {
    const bool holds_pair = i == j ? count_at(column.counts, i) >= 2
                                   : count_at(column.counts, i) >= 1 &&
                                         count_at(column.counts, j) >= 1;
    if (holds_pair) {
      if (!unit_layout) unit_layout = sub_layout(column.witness, expand_counts(unit, registry));
      const std::size_t size = std::max<std::size_t>(column.counts.size(), compound + 1);
      column.counts.resize(size, 0);
      --column.counts[i];
      --column.counts[j];
      ++column.counts[compound];
      normalize_counts(column.counts);
      if (!verify_layout(column.witness, column.counts, registry, instance)) {
        throw StructuralError("compound substitution broke a witness layout");
      }
    }
    if (!child.admits(column.counts)) continue;
    const bool duplicate = std::any_of(adjusted.begin(), adjusted.end(), [&](const Column& c) {
      return counts_equal(c.counts, column.counts);
    });
    if (!duplicate) adjusted.push_back(std::move(column));
  }
  child.pool = std::move(adjusted);

  // Bottom-left in the default order can miss a layout the pool already shows.
  if (auto layout = place_counts(unit, registry, instance)) unit_layout = std::move(layout);
  if (!unit_layout || !verify_layout(*unit_layout, unit, registry, instance)) return std::nullopt;
  child.add_column(Column{unit, std::move(*unit_layout), child.id});
  ensure_homogeneous_columns(child, instance);
  return child;
}

}  // namespace pcbpack
