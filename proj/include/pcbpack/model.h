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

#ifndef PCBPACK_MODEL_H_
#define PCBPACK_MODEL_H_

#include <cstdint>
#include <deque>
#include <limits>
#include <map>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pcbpack {

// Index of an item type in a TypeRegistry. Original types occupy
// [0, num_originals); compound types are appended after them.
using TypeIndex = int;

// Count vector indexed by TypeIndex. Entries past the end are zero; the
// canonical form carries no trailing zeros (see normalize_counts).
using Counts = std::vector<int>;

// Internal inconsistency that valid inputs can never trigger.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// The instance cannot be solved at all (an item does not fit an empty bin).
class InfeasibleInstance : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ItemKind { kOriginal, kCompound };

struct ItemType {
  std::string id;
  int width = 0;
  int height = 0;
  int from = 0;
  int to = 0;
  ItemKind kind = ItemKind::kOriginal;
  // (type, count) pairs; empty for original types.
  std::vector<std::pair<TypeIndex, int>> constituents;

  bool operator==(const ItemType&) const = default;
};

struct Instance {
  std::string name;
  int bin_width = 0;
  int bin_height = 0;
  int spacing = 0;
  std::vector<ItemType> item_types;  // originals only

  int num_types() const { return static_cast<int>(item_types.size()); }
  int max_to() const;

  // Throws std::invalid_argument for malformed data and InfeasibleInstance
  // when an item is larger than the bin.
  void validate() const;

  bool operator==(const Instance&) const = default;
};

struct Placement {
  TypeIndex type = 0;  // always an original type
  int x = 0;
  int y = 0;

  bool operator==(const Placement&) const = default;
};

struct Layout {
  std::vector<Placement> placements;

  bool operator==(const Layout&) const = default;
};

struct Column {
  Counts counts;
  Layout witness;
  int node_scope = 0;
};

enum class NodeSelection { kDepthFirst, kHeuristicMinHeap };

struct SolverConfig {
  double c1 = 1.0;
  double c2 = 1.0;
  // 0 selects max_j to_j.
  double big_m = 0.0;
  double time_limit_seconds = std::numeric_limits<double>::infinity();
  // Deterministic budget on explored nodes; 0 means unlimited.
  std::int64_t node_limit = 0;
  std::uint64_t rng_seed = 1;
  NodeSelection node_selection = NodeSelection::kHeuristicMinHeap;
  int pricing_random_sequences = 8;
  double overproduction_rate = 0.15;
  // Worker threads for pricing fills; 0 picks hardware concurrency.
  int pricing_threads = 0;

  double effective_big_m(const Instance& instance) const;
  void validate(const Instance& instance) const;
};

const char* to_string(NodeSelection selection);
std::optional<NodeSelection> parse_node_selection(const std::string& text);

// floor(from * (1 + rate)), never below from.
int derive_to(int from, double rate);

int count_at(const Counts& counts, TypeIndex type);
void normalize_counts(Counts& counts);
Counts normalized(Counts counts);
void add_into(Counts& target, const Counts& addend, int factor = 1);
bool counts_equal(const Counts& a, const Counts& b);
int total_count(const Counts& counts);

// Registry of original and compound item types. Append-only; readers may run
// concurrently with each other, writers are serialized.
class TypeRegistry {
 public:
  // Originals from the instance, no compounds.
  explicit TypeRegistry(const Instance& instance);
  // Arbitrary definitions, compounds may reference any index. Throws
  // StructuralError if a compound resolves cyclically or out of range.
  TypeRegistry(std::vector<ItemType> types, int num_originals);

  int size() const;
  int num_originals() const { return num_originals_; }
  bool is_compound(TypeIndex type) const { return type >= num_originals_; }

  ItemType type(TypeIndex type) const;
  std::string id(TypeIndex type) const;
  // Original-type counts of one item of `type`.
  Counts expansion(TypeIndex type) const;
  // Original rectangles of one item of `type`, constituents contiguous in
  // registry order.
  std::vector<TypeIndex> rectangle_sequence(TypeIndex type) const;
  // Total constituent rectangle area of one item.
  std::int64_t area(TypeIndex type) const;

  // Compound with constituents {i:1, j:1} ({i:2} when i == j). Several
  // variants of one pair may exist; find and add return the first.
  std::optional<TypeIndex> find_compound(TypeIndex i, TypeIndex j) const;
  TypeIndex add_compound(TypeIndex i, TypeIndex j);
  // All variants of the pair in creation order.
  std::vector<TypeIndex> compound_variants(TypeIndex i, TypeIndex j) const;
  // Always registers a new variant.
  TypeIndex add_compound_variant(TypeIndex i, TypeIndex j);

 private:
  struct Entry {
    ItemType item;
    Counts expansion;
    std::vector<TypeIndex> sequence;
    std::int64_t area = 0;
  };

  void resolve_all();
  Entry make_entry(ItemType item) const;
  TypeIndex append_compound(TypeIndex i, TypeIndex j);

  int num_originals_ = 0;
  mutable std::shared_mutex mutex_;
  std::deque<Entry> entries_;
  std::map<std::pair<TypeIndex, TypeIndex>, std::vector<TypeIndex>> compound_pairs_;
};

// Counts over original types only; preserves the rectangle multiset.
Counts expand_counts(const Counts& counts, const TypeRegistry& registry);

struct Assignment {
  Column column;
  double x = 0.0;
};

struct Solution {
  std::vector<Assignment> assignments;
  Counts totals;  // s_j over original types
  double bins = 0.0;
  int patterns = 0;
  double objective_report = 0.0;
  bool integral = false;
};

// Builds the reported solution from node-level assignments. Columns with
// x = 0 are dropped and columns that expand to the same original count
// vector are merged into one pattern.
Solution summarize_solution(const std::vector<Assignment>& assignments,
                            const TypeRegistry& registry,
                            const SolverConfig& config);

inline constexpr double kIntegralityTolerance = 1e-6;

}  // namespace pcbpack

#endif  // PCBPACK_MODEL_H_
