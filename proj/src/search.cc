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

#include "pcbpack/search.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <random>

#include "pcbpack/placement.h"
#include "pcbpack/pricing.h"

namespace pcbpack {

const char* to_string(SearchStatus status) {
  switch (status) {
    case SearchStatus::kTreeExhausted:
      return "tree_exhausted";
    case SearchStatus::kGapClosed:
      return "gap_closed";
    case SearchStatus::kTimeLimit:
      return "time_limit";
    case SearchStatus::kNodeLimit:
      return "node_limit";
    case SearchStatus::kStoppedByCaller:
      return "stopped";
  }
  return "?";
}

std::vector<Column> initial_columns(const NodeProblem& root, const Instance& instance) {
  std::vector<Column> columns;
  auto add = [&](std::optional<Column> column) {
    if (!column) return;
    const bool duplicate = std::any_of(columns.begin(), columns.end(), [&](const Column& c) {
      return counts_equal(c.counts, column->counts);
    });
    if (!duplicate) columns.push_back(std::move(*column));
  };
  for (TypeIndex type : root.active) {
    const TypeIndex sequence[] = {type};
    add(greedy_fill(sequence, root, instance));
  }
  std::vector<TypeIndex> by_area = root.active;
  std::stable_sort(by_area.begin(), by_area.end(), [&](TypeIndex a, TypeIndex b) {
    return root.registry->area(a) > root.registry->area(b);
  });
  add(greedy_fill(by_area, root, instance));
  return columns;
}

std::vector<Column> initial_columns(const Instance& instance) {
  const NodeProblem root = make_root_node(instance, std::make_shared<TypeRegistry>(instance));
  return initial_columns(root, instance);
}

namespace {

std::uint64_t splitmix64(std::uint64_t value) {
  value += 0x9e3779b97f4a7c15ULL;
  value = (value ^ (value >> 30)) * 0xbf58476d1ce4e5b9ULL;
  value = (value ^ (value >> 27)) * 0x94d049bb133111ebULL;
  return value ^ (value >> 31);
}

bool expired(const std::optional<Clock::time_point>& deadline) {
  return deadline && Clock::now() >= *deadline;
}

}  // namespace

ColumnGenerationOutcome column_generation(NodeProblem& node, const Instance& instance,
                                          const SolverConfig& config,
                                          std::optional<Clock::time_point> deadline,
                                          const SearchHooks* hooks) {
  std::mt19937_64 rng(splitmix64(config.rng_seed ^ splitmix64(node.id)));
  ColumnGenerationOutcome result;
  std::vector<BasisEntry> basis;
  while (true) {
    result.rmp = solve_rmp(node, basis);
    ++result.rounds;
    if (hooks && hooks->on_rmp_solve) hooks->on_rmp_solve(node, build_rmp(node), result.rmp);
    if (result.rmp.infeasible) return result;
    basis = result.rmp.lp.basis;
    if (expired(deadline)) {
      result.timed_out = true;
      return result;
    }
    std::vector<Column> columns = price(node, result.rmp.duals, instance, config, rng);
    if (columns.empty()) return result;
    for (Column& column : columns) {
      if (node.add_column(std::move(column))) ++result.columns_added;
    }
  }
}

Solution extract_solution(const NodeProblem& node, const RmpSolveOutcome& outcome,
                          const SolverConfig& config) {
  std::vector<Assignment> assignments;
  for (std::size_t l = 0; l < node.pool.size(); ++l) {
    if (outcome.x[l] > kIntegralityTolerance) {
      assignments.push_back({node.pool[l], outcome.x[l]});
    }
  }
  return summarize_solution(assignments, *node.registry, config);
}

bool is_valid_solution(const Solution& solution, const Instance& instance) {
  if (!solution.integral) return false;
  const TypeRegistry registry(instance);
  Counts totals(instance.num_types(), 0);
  for (const Assignment& assignment : solution.assignments) {
    if (assignment.x < 0.0 || std::abs(assignment.x - std::round(assignment.x)) > 0.0) {
      return false;
    }
    if (!verify_layout(assignment.column.witness, assignment.column.counts, registry,
                       instance)) {
      return false;
    }
    for (std::size_t j = 0; j < assignment.column.counts.size(); ++j) {
      if (static_cast<int>(j) >= instance.num_types()) return false;
      totals[j] += assignment.column.counts[j] * static_cast<int>(assignment.x);
    }
  }
  for (int j = 0; j < instance.num_types(); ++j) {
    const ItemType& item = instance.item_types[j];
    if (totals[j] < item.from || totals[j] > item.to) return false;
    if (count_at(solution.totals, j) != totals[j]) return false;
  }
  return true;
}

namespace {

// Open nodes: a stack for depth-first, a min-heap on parent_patterns_used
// (older first on ties) for the heuristic rule.
class OpenNodes {
 public:
  explicit OpenNodes(NodeSelection selection) : selection_(selection) {}

  void push(NodeProblem node) {
    const std::int64_t order = next_order_++;
    keys_.emplace(Key{selection_ == NodeSelection::kDepthFirst ? 0 : node.parent_patterns_used,
                      selection_ == NodeSelection::kDepthFirst ? -order : order},
                  std::move(node));
  }

  NodeProblem pop() {
    auto it = keys_.begin();
    NodeProblem node = std::move(it->second);
    keys_.erase(it);
    return node;
  }

  bool empty() const { return keys_.empty(); }
  std::int64_t size() const { return static_cast<std::int64_t>(keys_.size()); }

  double min_bound() const {
    double bound = std::numeric_limits<double>::infinity();
    for (const auto& [key, node] : keys_) bound = std::min(bound, node.inherited_bound);
    return bound;
  }

 private:
  using Key = std::pair<std::int64_t, std::int64_t>;
  NodeSelection selection_;
  std::int64_t next_order_ = 0;
  std::map<Key, NodeProblem> keys_;
};

bool better(const Solution& candidate, const std::optional<Solution>& incumbent) {
  if (!incumbent) return true;
  if (candidate.bins < incumbent->bins - 0.5) return true;
  return candidate.bins < incumbent->bins + 0.5 && candidate.patterns < incumbent->patterns;
}

double whole_bins(double lp_bins) { return std::ceil(lp_bins - kIntegralityTolerance); }

}  // namespace

SearchResult run(const Instance& instance, const SolverConfig& config,
                 const SearchHooks& hooks) {
  instance.validate();
  config.validate(instance);
  const auto start = Clock::now();
  std::optional<Clock::time_point> deadline;
  if (std::isfinite(config.time_limit_seconds)) {
    deadline = start + std::chrono::duration_cast<Clock::duration>(
                           std::chrono::duration<double>(config.time_limit_seconds));
  }

  SearchResult result;
  SearchReport& report = result.report;
  report.strategy = config.node_selection;
  report.seed = config.rng_seed;
  std::optional<Solution>& incumbent = result.incumbent;

  auto registry = std::make_shared<TypeRegistry>(instance);
  NodeProblem root = make_root_node(instance, registry);
  for (Column& column : initial_columns(root, instance)) root.add_column(std::move(column));
  ensure_homogeneous_columns(root, instance);

  OpenNodes open(config.node_selection);
  open.push(std::move(root));
  int next_id = 1;
  bool root_solved = false;
  double lost_bound = std::numeric_limits<double>::infinity();

  auto elapsed = [&] { return std::chrono::duration<double>(Clock::now() - start).count(); };
  auto current_bound = [&](const NodeProblem* in_progress) {
    double bound = std::min(open.min_bound(), lost_bound);
    if (in_progress) bound = std::min(bound, in_progress->inherited_bound);
    if (!std::isfinite(bound)) return incumbent ? incumbent->bins : 0.0;
    return whole_bins(bound);
  };
  auto refresh_gap = [&] {
    if (!incumbent) {
      report.gap.reset();
      return;
    }
    report.gap = incumbent->bins > 0.0
                     ? std::max(0.0, (incumbent->bins - report.best_bound) / incumbent->bins)
                     : 0.0;
  };
  auto emit = [&](ProgressEvent::Kind kind, std::string message = {}) {
    if (!hooks.progress) return;
    ProgressEvent event;
    event.kind = kind;
    event.nodes_explored = report.nodes_explored;
    event.open_nodes = open.size();
    if (incumbent) {
      event.incumbent_bins = incumbent->bins;
      event.incumbent_patterns = incumbent->patterns;
    }
    event.best_bound = report.best_bound;
    event.gap = report.gap;
    event.elapsed_seconds = elapsed();
    event.message = std::move(message);
    hooks.progress(event);
  };

  report.status = SearchStatus::kTreeExhausted;
  while (!open.empty()) {
    if (expired(deadline)) {
      report.status = SearchStatus::kTimeLimit;
      break;
    }
    if (config.node_limit > 0 && report.nodes_explored >= config.node_limit) {
      report.status = SearchStatus::kNodeLimit;
      break;
    }
    NodeProblem node = open.pop();
    ++report.nodes_explored;
    ColumnGenerationOutcome cg = column_generation(node, instance, config, deadline, &hooks);
    report.columns_generated += cg.columns_added;
    report.lp_solves += cg.rounds;

    if (cg.rmp.infeasible) {
      ++report.nodes_infeasible;
      node.status = NodeStatus::kInfeasible;
      report.best_bound = current_bound(nullptr);
      refresh_gap();
      emit(ProgressEvent::Kind::kNode);
      continue;
    }
    if (!root_solved) {
      root_solved = true;
      report.root_bound = cg.rmp.bins;
    }

    bool improved = false;
    if (!cg.rmp.fractional) {
      Solution solution = extract_solution(node, cg.rmp, config);
      if (!is_valid_solution(solution, instance)) {
        throw StructuralError("integral node solution failed verification");
      }
      node.status = NodeStatus::kSolved;
      if (better(solution, incumbent)) {
        incumbent = std::move(solution);
        improved = true;
      }
    }

    if (cg.timed_out) {
      // The interrupted node keeps its parent's bound; nothing is branched.
      NodeProblem* in_progress = &node;
      report.best_bound = current_bound(cg.rmp.fractional ? in_progress : nullptr);
      refresh_gap();
      if (improved) emit(ProgressEvent::Kind::kIncumbent);
      report.status = SearchStatus::kTimeLimit;
      break;
    }

    if (cg.rmp.fractional) {
      if (incumbent && whole_bins(cg.rmp.bins) >= incumbent->bins) {
        ++report.nodes_pruned;
        node.status = NodeStatus::kPruned;
      } else {
        std::optional<BranchPair> pair;
        try {
          pair = select_branching_pair(node, cg.rmp);
        } catch (const BranchingStuck& stuck) {
          ++report.nodes_stuck;
          lost_bound = std::min(lost_bound, cg.rmp.bins);
          emit(ProgressEvent::Kind::kWarning, stuck.what());
        }
        if (pair) {
          const int key = cg.rmp.patterns_used();
          NodeProblem right = make_right_child(node, *pair, next_id++, instance);
          std::optional<NodeProblem> left = make_left_child(node, *pair, next_id++, instance);
          right.parent_patterns_used = key;
          right.inherited_bound = cg.rmp.bins;
          if (left) {
            left->parent_patterns_used = key;
            left->inherited_bound = cg.rmp.bins;
          } else {
            ++report.nodes_infeasible;
          }
          if (hooks.on_branch) hooks.on_branch(node, cg.rmp, *pair, left, right);
          if (config.node_selection == NodeSelection::kDepthFirst) {
            // The stack pops the left child first.
            open.push(std::move(right));
            if (left) open.push(std::move(*left));
          } else {
            if (left) open.push(std::move(*left));
            open.push(std::move(right));
          }
        }
      }
    }

    report.best_bound = current_bound(nullptr);
    refresh_gap();
    if (improved) {
      emit(ProgressEvent::Kind::kIncumbent);
      if (hooks.stop_when && hooks.stop_when(*incumbent)) {
        report.status = SearchStatus::kStoppedByCaller;
        break;
      }
    } else {
      emit(ProgressEvent::Kind::kNode);
    }
    if (incumbent && report.gap && *report.gap <= 0.0 && !open.empty()) {
      report.status = SearchStatus::kGapClosed;
      break;
    }
  }
  if (open.empty() && report.status == SearchStatus::kTreeExhausted) {
    report.best_bound = current_bound(nullptr);
    refresh_gap();
  }
  report.wall_seconds = elapsed();
  emit(ProgressEvent::Kind::kFinished, to_string(report.status));
  return result;
}

}  // namespace pcbpack
