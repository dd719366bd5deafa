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

#include "pcbpack/model.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <mutex>
#include <string>

namespace pcbpack {

int Instance::max_to() const {
  int result = 0;
  for (const ItemType& item : item_types) result = std::max(result, item.to);
  return result;
}

void Instance::validate() const {
  if (bin_width <= 0 || bin_height <= 0) {
    throw std::invalid_argument("bin: width and height must be positive");
  }
  if (spacing < 0) throw std::invalid_argument("spacing: must be >= 0");
  for (std::size_t row = 0; row < item_types.size(); ++row) {
    const ItemType& item = item_types[row];
    const std::string where =
        "items[" + std::to_string(row) + "] (id '" + item.id + "')";
    if (item.kind != ItemKind::kOriginal) {
      throw std::invalid_argument(where + ": instances hold original types only");
    }
    if (item.width <= 0) throw std::invalid_argument(where + ": width must be positive");
    if (item.height <= 0) throw std::invalid_argument(where + ": height must be positive");
    if (item.from < 0) throw std::invalid_argument(where + ": from must be >= 0");
    if (item.from > item.to) throw std::invalid_argument(where + ": from exceeds to");
    for (std::size_t other = 0; other < row; ++other) {
      if (item_types[other].id == item.id) {
        throw std::invalid_argument(where + ": duplicate id");
      }
    }
    if (item.width > bin_width || item.height > bin_height) {
      throw InfeasibleInstance(where + ": " + std::to_string(item.width) + "x" +
                               std::to_string(item.height) +
                               " does not fit the " + std::to_string(bin_width) +
                               "x" + std::to_string(bin_height) + " bin");
    }
  }
}

double SolverConfig::effective_big_m(const Instance& instance) const {
  return big_m > 0.0 ? big_m : static_cast<double>(instance.max_to());
}

void SolverConfig::validate(const Instance& instance) const {
  if (!(c1 > 0.0)) throw std::invalid_argument("c1 must be positive");
  if (!(c2 > 0.0)) throw std::invalid_argument("c2 must be positive");
  if (effective_big_m(instance) < instance.max_to()) {
    throw std::invalid_argument("M must be at least max_j to_j");
  }
  if (!(time_limit_seconds > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (node_limit < 0) throw std::invalid_argument("node limit must be >= 0");
  if (pricing_random_sequences < 0) {
    throw std::invalid_argument("pricing_random_sequences must be >= 0");
  }
  if (overproduction_rate < 0.0) {
    throw std::invalid_argument("overproduction rate must be >= 0");
  }
}

const char* to_string(NodeSelection selection) {
  switch (selection) {
    case NodeSelection::kDepthFirst:
      return "dfs";
    case NodeSelection::kHeuristicMinHeap:
      return "heap";
  }
  return "?";
}

std::optional<NodeSelection> parse_node_selection(const std::string& text) {
  if (text == "dfs" || text == "depth_first") return NodeSelection::kDepthFirst;
  if (text == "heap" || text == "heuristic_min_heap") {
    return NodeSelection::kHeuristicMinHeap;
  }
  return std::nullopt;
}

int derive_to(int from, double rate) {
  if (rate < 0.0) throw std::invalid_argument("overproduction rate must be >= 0");
  // The epsilon absorbs binary representation error of the rate (1.15 is
  // slightly below 1.15 in double precision).
  const double scaled = static_cast<double>(from) * (1.0 + rate);
  const int capped = static_cast<int>(std::floor(scaled + 1e-9));
  return std::max(from, capped);
}

int count_at(const Counts& counts, TypeIndex type) {
  return type >= 0 && type < static_cast<int>(counts.size()) ? counts[type] : 0;
}

void normalize_counts(Counts& counts) {
  while (!counts.empty() && counts.back() == 0) counts.pop_back();
}

Counts normalized(Counts counts) {
  normalize_counts(counts);
  return counts;
}

void add_into(Counts& target, const Counts& addend, int factor) {
  if (target.size() < addend.size()) target.resize(addend.size(), 0);
  for (std::size_t k = 0; k < addend.size(); ++k) target[k] += factor * addend[k];
  normalize_counts(target);
}

bool counts_equal(const Counts& a, const Counts& b) {
  const std::size_t n = std::max(a.size(), b.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (count_at(a, static_cast<TypeIndex>(k)) != count_at(b, static_cast<TypeIndex>(k))) {
      return false;
    }
  }
  return true;
}

int total_count(const Counts& counts) {
  int total = 0;
  for (int value : counts) total += value;
  return total;
}

TypeRegistry::TypeRegistry(const Instance& instance)
    : num_originals_(instance.num_types()) {
  for (const ItemType& item : instance.item_types) {
    entries_.push_back(Entry{item, {}, {}, 0});
  }
  resolve_all();
}

TypeRegistry::TypeRegistry(std::vector<ItemType> types, int num_originals)
    : num_originals_(num_originals) {
  for (ItemType& item : types) entries_.push_back(Entry{std::move(item), {}, {}, 0});
  resolve_all();
}

void TypeRegistry::resolve_all() {
  const int n = static_cast<int>(entries_.size());
  // 0 = unvisited, 1 = in progress, 2 = done.
  std::vector<int> state(n, 0);
  std::function<void(TypeIndex)> visit = [&](TypeIndex t) {
    if (state[t] == 2) return;
    if (state[t] == 1) {
      throw StructuralError("compound type '" + entries_[t].item.id +
                            "' resolves cyclically");
    }
    state[t] = 1;
    Entry& entry = entries_[t];
    entry.expansion.clear();
    entry.sequence.clear();
    entry.area = 0;
    if (entry.item.kind == ItemKind::kOriginal) {
      entry.expansion.assign(t + 1, 0);
      entry.expansion[t] = 1;
      entry.sequence = {t};
      entry.area = static_cast<std::int64_t>(entry.item.width) * entry.item.height;
    } else {
      if (entry.item.constituents.empty()) {
        throw StructuralError("compound type '" + entry.item.id + "' is empty");
      }
      auto parts = entry.item.constituents;
      std::sort(parts.begin(), parts.end());
      for (const auto& [part, count] : parts) {
        if (part < 0 || part >= n) {
          throw StructuralError("compound type '" + entry.item.id +
                                "' references an unknown type");
        }
        visit(part);
        const Entry& sub = entries_[part];
        add_into(entry.expansion, sub.expansion, count);
        for (int c = 0; c < count; ++c) {
          entry.sequence.insert(entry.sequence.end(), sub.sequence.begin(),
                                sub.sequence.end());
        }
        entry.area += count * sub.area;
      }
      if (parts.size() == 2 || (parts.size() == 1 && parts[0].second == 2)) {
        const TypeIndex i = parts[0].first;
        const TypeIndex j = parts.size() == 2 ? parts[1].first : i;
        if ((parts.size() == 1 || (parts[0].second == 1 && parts[1].second == 1))) {
          compound_pairs_[{i, j}].push_back(t);
        }
      }
    }
    normalize_counts(entry.expansion);
    state[t] = 2;
  };
  for (TypeIndex t = 0; t < n; ++t) visit(t);
}

int TypeRegistry::size() const {
  std::shared_lock lock(mutex_);
  return static_cast<int>(entries_.size());
}

ItemType TypeRegistry::type(TypeIndex type) const {
  std::shared_lock lock(mutex_);
  return entries_.at(type).item;
}

std::string TypeRegistry::id(TypeIndex type) const {
  std::shared_lock lock(mutex_);
  return entries_.at(type).item.id;
}

Counts TypeRegistry::expansion(TypeIndex type) const {
  std::shared_lock lock(mutex_);
  return entries_.at(type).expansion;
}

std::vector<TypeIndex> TypeRegistry::rectangle_sequence(TypeIndex type) const {
  std::shared_lock lock(mutex_);
  return entries_.at(type).sequence;
}

std::int64_t TypeRegistry::area(TypeIndex type) const {
  std::shared_lock lock(mutex_);
  return entries_.at(type).area;
}

std::optional<TypeIndex> TypeRegistry::find_compound(TypeIndex i, TypeIndex j) const {
  if (i > j) std::swap(i, j);
  std::shared_lock lock(mutex_);
  auto it = compound_pairs_.find({i, j});
  if (it == compound_pairs_.end()) return std::nullopt;
  return it->second.front();
}

std::vector<TypeIndex> TypeRegistry::compound_variants(TypeIndex i, TypeIndex j) const {
  if (i > j) std::swap(i, j);
  std::shared_lock lock(mutex_);
  auto it = compound_pairs_.find({i, j});
  if (it == compound_pairs_.end()) return {};
  return it->second;
}

TypeIndex TypeRegistry::add_compound(TypeIndex i, TypeIndex j) {
  if (i > j) std::swap(i, j);
  std::unique_lock lock(mutex_);
  auto it = compound_pairs_.find({i, j});
  if (it != compound_pairs_.end()) return it->second.front();
  return append_compound(i, j);
}

TypeIndex TypeRegistry::add_compound_variant(TypeIndex i, TypeIndex j) {
  if (i > j) std::swap(i, j);
  std::unique_lock lock(mutex_);
  return append_compound(i, j);
}

TypeIndex TypeRegistry::append_compound(TypeIndex i, TypeIndex j) {
  const int n = static_cast<int>(entries_.size());
  if (i < 0 || j >= n) throw StructuralError("compound of unknown type");
  const Entry& a = entries_[i];
  const Entry& b = entries_[j];
  std::vector<TypeIndex>& variants = compound_pairs_[{i, j}];
  Entry entry;
  entry.item.kind = ItemKind::kCompound;
  entry.item.id = "[" + a.item.id + "+" + b.item.id + "]";
  if (!variants.empty()) entry.item.id += "/" + std::to_string(variants.size() + 1);
  entry.item.from = 1;
  entry.item.to = 1;
  if (i == j) {
    entry.item.constituents = {{i, 2}};
  } else {
    entry.item.constituents = {{i, 1}, {j, 1}};
  }
  entry.expansion = a.expansion;
  add_into(entry.expansion, b.expansion);
  entry.sequence = a.sequence;
  entry.sequence.insert(entry.sequence.end(), b.sequence.begin(), b.sequence.end());
  entry.area = a.area + b.area;
  entries_.push_back(std::move(entry));
  variants.push_back(n);
  return n;
}

Counts expand_counts(const Counts& counts, const TypeRegistry& registry) {
  Counts result;
  const int n = registry.size();
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] == 0) continue;
    if (static_cast<int>(t) >= n) {
      throw StructuralError("count vector references an unknown type");
    }
    if (counts[t] < 0) throw std::invalid_argument("negative count");
    add_into(result, registry.expansion(static_cast<TypeIndex>(t)), counts[t]);
  }
  return result;
}

Solution summarize_solution(const std::vector<Assignment>& assignments,
                            const TypeRegistry& registry,
                            const SolverConfig& config) {
  Solution solution;
  solution.integral = true;
  std::map<Counts, std::size_t> merged;
  for (const Assignment& assignment : assignments) {
    if (std::abs(assignment.x) <= kIntegralityTolerance) continue;
    const Counts original = expand_counts(assignment.column.counts, registry);
    auto [it, inserted] = merged.emplace(original, solution.assignments.size());
    if (inserted) {
      Assignment entry;
      entry.column.counts = original;
      entry.column.witness = assignment.column.witness;
      entry.column.node_scope = assignment.column.node_scope;
      entry.x = assignment.x;
      solution.assignments.push_back(std::move(entry));
    } else {
      solution.assignments[it->second].x += assignment.x;
    }
  }
  solution.totals.assign(registry.num_originals(), 0);
  std::vector<double> totals(registry.num_originals(), 0.0);
  for (Assignment& assignment : solution.assignments) {
    const double rounded = std::round(assignment.x);
    if (std::abs(assignment.x - rounded) > kIntegralityTolerance) {
      solution.integral = false;
    } else {
      assignment.x = rounded;
    }
    solution.bins += assignment.x;
    for (std::size_t j = 0; j < assignment.column.counts.size(); ++j) {
      totals[j] += assignment.column.counts[j] * assignment.x;
    }
  }
  for (int j = 0; j < registry.num_originals(); ++j) {
    solution.totals[j] = static_cast<int>(std::llround(totals[j]));
  }
  solution.patterns = static_cast<int>(solution.assignments.size());
  solution.objective_report =
      solution.integral ? config.c1 * solution.patterns + config.c2 * solution.bins
                        : std::numeric_limits<double>::quiet_NaN();
  return solution;
}

}  // namespace pcbpack
