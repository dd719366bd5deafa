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

#ifndef PCBPACK_IO_H_
#define PCBPACK_IO_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcbpack/model.h"
#include "pcbpack/search.h"

namespace pcbpack {

// Malformed input file; the message names the offending field or row.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Instance documents are JSON:
//   {"name": "...", "bin": {"width": W, "height": H}, "spacing": d,
//    "items": [{"id": "1", "width": w, "height": h, "from": f, "to": t}]}
// `to` is optional and derived with `overproduction_rate` when absent; `name`
// is optional.
Instance parse_instance_text(const std::string& text, double overproduction_rate = 0.15,
                             const std::string& source = "<input>");
Instance parse_instance(const std::string& path, double overproduction_rate = 0.15);
// Canonical form with every `to` explicit.
std::string instance_to_text(const Instance& instance);
void write_instance(const Instance& instance, const std::string& path);
// 64-bit FNV-1a of the canonical instance text, as 16 hex digits.
std::string instance_digest(const Instance& instance);

// Path of a bundled data record ("r1" ... "r5"), if present.
std::optional<std::string> bundled_record_path(const std::string& name);
// `argument` if it names a file, otherwise the bundled record of that name.
std::string resolve_instance_path(const std::string& argument);

// Solution record. Contains no wall-clock data, so runs that explore the same
// tree produce identical bytes.
std::string solution_to_text(const Instance& instance, const SolverConfig& config,
                             const SearchResult& result);
void emit_solution(const Instance& instance, const SolverConfig& config,
                   const SearchResult& result, const std::string& path);

struct LoadedSolution {
  Instance instance;
  std::string digest;
  std::optional<double> bins;
  std::optional<int> patterns;
  std::optional<double> best_bound;
  std::vector<Assignment> assignments;  // counts over original types
};

LoadedSolution load_solution_text(const std::string& text);
LoadedSolution load_solution(const std::string& path);

struct VerifyReport {
  bool ok = true;
  std::vector<std::string> problems;
};

// Re-checks every layout, the demand ranges, and the reported totals.
VerifyReport verify_solution(const LoadedSolution& solution);

// One SVG drawing of the bin with the column's witness rectangles,
// 1 mm = 1 user unit.
std::string render_pattern_svg(const Column& column, const Instance& instance);
void render_pattern(const Column& column, const Instance& instance, const std::string& path);

}  // namespace pcbpack

#endif  // PCBPACK_IO_H_
