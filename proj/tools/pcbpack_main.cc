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

// Command line front end: solve, verify, oracle.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "pcbpack/io.h"
#include "pcbpack/oracle.h"
#include "pcbpack/search.h"

namespace {

constexpr int kExitIncumbent = 0;
constexpr int kExitNoIncumbent = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitInputError = 4;

void print_progress(const pcbpack::ProgressEvent& event) {
  std::fprintf(stderr, "[%8.1fs] nodes=%lld open=%lld", event.elapsed_seconds,
               static_cast<long long>(event.nodes_explored),
               static_cast<long long>(event.open_nodes));
  if (event.incumbent_bins) {
    std::fprintf(stderr, " incumbent=%g bins/%d patterns", *event.incumbent_bins,
                 event.incumbent_patterns);
  } else {
    std::fprintf(stderr, " incumbent=none");
  }
  std::fprintf(stderr, " bound=%g", event.best_bound);
  if (event.gap) std::fprintf(stderr, " gap=%.1f%%", 100.0 * *event.gap);
  if (!event.message.empty()) std::fprintf(stderr, " %s", event.message.c_str());
  std::fprintf(stderr, "\n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Branch-and-price for 2D bin packing with pattern minimization"};
  app.require_subcommand(1);

  std::string instance_arg;
  std::string strategy = "heap";
  double time_limit = 0.0;
  std::int64_t node_limit = 0;
  std::uint64_t seed = 1;
  double c1 = 1.0;
  double c2 = 1.0;
  double rate = 0.15;
  int random_sequences = 8;
  int threads = 0;
  std::string out_path;
  std::string render_dir;
  bool quiet = false;

  CLI::App* solve = app.add_subcommand("solve", "Solve an instance file or bundled record");
  solve->add_option("instance", instance_arg, "Instance file or bundled record (r1..r5)")
      ->required();
  solve->add_option("--strategy", strategy, "Node selection: dfs or heap")
      ->check(CLI::IsMember({"dfs", "heap"}));
  solve->add_option("--time-limit", time_limit, "Wall-clock budget in seconds (0 = none)");
  solve->add_option("--node-limit", node_limit, "Budget on explored nodes (0 = none)");
  solve->add_option("--seed", seed, "Pricing random seed");
  solve->add_option("--c1", c1, "Weight of the pattern count in the reported objective");
  solve->add_option("--c2", c2, "Weight of the bin count in the reported objective");
  solve->add_option("--rate", rate, "Overproduction rate for items without 'to'");
  solve->add_option("--random-sequences", random_sequences,
                    "Randomized pricing sequences per round");
  solve->add_option("--threads", threads, "Pricing worker threads (0 = hardware)");
  solve->add_option("--out", out_path, "Write the solution record to FILE");
  solve->add_option("--render", render_dir, "Write one SVG per pattern into DIR");
  solve->add_flag("--quiet", quiet, "No progress lines");

  std::string solution_path;
  CLI::App* verify = app.add_subcommand("verify", "Re-check a solution file");
  verify->add_option("solution", solution_path, "Solution file")->required();

  std::string oracle_arg;
  CLI::App* oracle = app.add_subcommand("oracle", "Exact solve of a toy instance");
  oracle->add_option("instance", oracle_arg, "Instance file (n <= 3, to <= 4)")->required();
  oracle->add_option("--rate", rate, "Overproduction rate for items without 'to'");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*solve) {
      const pcbpack::Instance instance =
          pcbpack::parse_instance(pcbpack::resolve_instance_path(instance_arg), rate);
      pcbpack::SolverConfig config;
      config.c1 = c1;
      config.c2 = c2;
      config.rng_seed = seed;
      config.node_limit = node_limit;
      config.overproduction_rate = rate;
      config.pricing_random_sequences = random_sequences;
      config.pricing_threads = threads;
      config.node_selection = *pcbpack::parse_node_selection(strategy);
      if (time_limit > 0.0) config.time_limit_seconds = time_limit;

      pcbpack::SearchHooks hooks;
      double last_print = -1.0;
      if (!quiet) {
        hooks.progress = [&](const pcbpack::ProgressEvent& event) {
          using Kind = pcbpack::ProgressEvent::Kind;
          if (event.kind == Kind::kNode && event.elapsed_seconds - last_print < 1.0) return;
          last_print = event.elapsed_seconds;
          print_progress(event);
        };
      }
      const pcbpack::SearchResult result = pcbpack::run(instance, config, hooks);
      if (!out_path.empty()) pcbpack::emit_solution(instance, config, result, out_path);
      if (!render_dir.empty() && result.incumbent) {
        std::filesystem::create_directories(render_dir);
        int k = 0;
        for (const auto& assignment : result.incumbent->assignments) {
          const auto file = std::filesystem::path(render_dir) /
                            ("pattern_" + std::to_string(++k) + ".svg");
          pcbpack::render_pattern(assignment.column, instance, file.string());
        }
      }
      const auto& report = result.report;
      if (result.incumbent) {
        std::printf("status=%s bins=%g patterns=%d objective=%g bound=%g gap=%.2f%% "
                    "nodes=%lld time=%.1fs\n",
                    pcbpack::to_string(report.status), result.incumbent->bins,
                    result.incumbent->patterns,
                    pcbpack::report_objective(*result.incumbent, config), report.best_bound,
                    100.0 * report.gap.value_or(0.0),
                    static_cast<long long>(report.nodes_explored), report.wall_seconds);
        return kExitIncumbent;
      }
      std::printf("status=%s no feasible solution found bound=%g nodes=%lld time=%.1fs\n",
                  pcbpack::to_string(report.status), report.best_bound,
                  static_cast<long long>(report.nodes_explored), report.wall_seconds);
      return kExitNoIncumbent;
    }

    if (*verify) {
      const pcbpack::LoadedSolution solution = pcbpack::load_solution(solution_path);
      const pcbpack::VerifyReport report = pcbpack::verify_solution(solution);
      for (const std::string& problem : report.problems) {
        std::fprintf(stderr, "%s\n", problem.c_str());
      }
      std::printf("%s: %zu patterns, %s\n", solution_path.c_str(),
                  solution.assignments.size(), report.ok ? "valid" : "INVALID");
      return report.ok ? 0 : 1;
    }

    if (*oracle) {
      const pcbpack::Instance instance =
          pcbpack::parse_instance(pcbpack::resolve_instance_path(oracle_arg), rate);
      const pcbpack::OracleResult result = pcbpack::exact_solve(instance);
      std::printf("bins=%d patterns=%d\n", result.bins, result.patterns);
      for (const auto& [pattern, count] : result.assignment) {
        std::printf("  x=%d", count);
        for (std::size_t t = 0; t < pattern.counts.size(); ++t) {
          if (pattern.counts[t] > 0) {
            std::printf(" %s:%d", instance.item_types[t].id.c_str(), pattern.counts[t]);
          }
        }
        std::printf("\n");
      }
      return 0;
    }
  } catch (const pcbpack::InfeasibleInstance& e) {
    std::fprintf(stderr, "infeasible instance: %s\n", e.what());
    return kExitInfeasible;
  } catch (const pcbpack::OracleGuardError& e) {
    std::fprintf(stderr, "%s\n", e.what());
    return kExitInputError;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "input error: %s\n", e.what());
    return kExitInputError;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}
