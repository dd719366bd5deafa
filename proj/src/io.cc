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

#include "pcbpack/io.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include "json.hpp"
#include "pcbpack/placement.h"

namespace pcbpack {
namespace {

using Json = nlohmann::ordered_json;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path + ": cannot write file");
  out << text;
  if (!out) throw std::runtime_error(path + ": write failed");
}

int integer_field(const Json& object, const char* key, const std::string& where,
                  std::optional<int> fallback = std::nullopt) {
  if (!object.contains(key)) {
    if (fallback) return *fallback;
    throw InputError(where + "." + key + ": missing");
  }
  const Json& value = object.at(key);
  if (!value.is_number_integer()) {
    throw InputError(where + "." + key + ": expected an integer");
  }
  const auto v = value.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw InputError(where + "." + key + ": out of range");
  }
  return static_cast<int>(v);
}

Json instance_json(const Instance& instance) {
  Json doc;
  doc["name"] = instance.name;
  doc["bin"] = {{"width", instance.bin_width}, {"height", instance.bin_height}};
  doc["spacing"] = instance.spacing;
  Json items = Json::array();
  for (const ItemType& item : instance.item_types) {
    items.push_back({{"id", item.id},
                     {"width", item.width},
                     {"height", item.height},
                     {"from", item.from},
                     {"to", item.to}});
  }
  doc["items"] = std::move(items);
  return doc;
}

Instance instance_from_json(const Json& doc, double rate, const std::string& source) {
  if (!doc.is_object()) throw InputError(source + ": expected a JSON object");
  Instance instance;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw InputError(source + ": name: expected a string");
    instance.name = doc["name"].get<std::string>();
  }
  if (!doc.contains("bin") || !doc["bin"].is_object()) {
    throw InputError(source + ": bin: missing or not an object");
  }
  instance.bin_width = integer_field(doc["bin"], "width", source + ": bin");
  instance.bin_height = integer_field(doc["bin"], "height", source + ": bin");
  instance.spacing = integer_field(doc, "spacing", source);
  if (!doc.contains("items") || !doc["items"].is_array()) {
    throw InputError(source + ": items: missing or not an array");
  }
  const Json& items = doc["items"];
  for (std::size_t row = 0; row < items.size(); ++row) {
    const Json& entry = items[row];
    const std::string where = source + ": items[" + std::to_string(row) + "]";
    if (!entry.is_object()) throw InputError(where + ": expected an object");
    ItemType item;
    if (!entry.contains("id")) throw InputError(where + ".id: missing");
    if (entry["id"].is_string()) {
      item.id = entry["id"].get<std::string>();
    } else if (entry["id"].is_number_integer()) {
      item.id = std::to_string(entry["id"].get<long long>());
    } else {
      throw InputError(where + ".id: expected a string or integer");
    }
    item.width = integer_field(entry, "width", where);
    item.height = integer_field(entry, "height", where);
    item.from = integer_field(entry, "from", where);
    if (item.from < 0) throw InputError(where + ".from: must be >= 0");
    item.to = entry.contains("to") ? integer_field(entry, "to", where)
                                   : derive_to(item.from, rate);
    instance.item_types.push_back(std::move(item));
  }
  try {
    instance.validate();
  } catch (const InfeasibleInstance& e) {
    throw InfeasibleInstance(source + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(source + ": " + e.what());
  }
  return instance;
}

Json parse_json(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(source + ": malformed JSON: " + e.what());
  }
}

}  // namespace

Instance parse_instance_text(const std::string& text, double overproduction_rate,
                             const std::string& source) {
  return instance_from_json(parse_json(text, source), overproduction_rate, source);
}

Instance parse_instance(const std::string& path, double overproduction_rate) {
  return parse_instance_text(read_file(path), overproduction_rate, path);
}

std::string instance_to_text(const Instance& instance) {
  return instance_json(instance).dump(2) + "\n";
}

void write_instance(const Instance& instance, const std::string& path) {
  write_file(path, instance_to_text(instance));
}

std::string instance_digest(const Instance& instance) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : instance_json(instance).dump()) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buffer[17];
  std::snprintf(buffer, sizeof(buffer), "%016llx", static_cast<unsigned long long>(hash));
  return buffer;
}

std::optional<std::string> bundled_record_path(const std::string& name) {
  const std::filesystem::path path =
      std::filesystem::path(PCBPACK_DATA_DIR) / (name + ".json");
  if (std::filesystem::exists(path)) return path.string();
  return std::nullopt;
}

std::string resolve_instance_path(const std::string& argument) {
  if (std::filesystem::exists(argument)) return argument;
  if (auto bundled = bundled_record_path(argument)) return *bundled;
  throw InputError(argument + ": no such file or bundled record");
}

std::string solution_to_text(const Instance& instance, const SolverConfig& config,
                             const SearchResult& result) {
  const SearchReport& report = result.report;
  Json doc;
  doc["format"] = "pcbpack-solution-1";
  doc["instance_digest"] = instance_digest(instance);
  doc["instance"] = instance_json(instance);
  doc["strategy"] = to_string(config.node_selection);
  doc["seed"] = config.rng_seed;
  doc["c1"] = config.c1;
  doc["c2"] = config.c2;
  doc["big_m"] = config.effective_big_m(instance);
  if (std::isfinite(config.time_limit_seconds)) {
    doc["time_limit_seconds"] = config.time_limit_seconds;
  } else {
    doc["time_limit_seconds"] = nullptr;
  }
  doc["node_limit"] = config.node_limit;
  doc["status"] = to_string(report.status);
  if (result.incumbent) {
    doc["bins"] = result.incumbent->bins;
    doc["patterns"] = result.incumbent->patterns;
    doc["objective"] = report_objective(*result.incumbent, config);
  }
  doc["best_bound"] = report.best_bound;
  doc["root_bound"] = report.root_bound;
  if (report.gap) doc["gap"] = *report.gap;
  doc["bound_is_heuristic"] = true;
  doc["nodes_explored"] = report.nodes_explored;
  doc["columns_generated"] = report.columns_generated;
  Json blocks = Json::array();
  if (result.incumbent) {
    for (const Assignment& assignment : result.incumbent->assignments) {
      Json counts = Json::object();
      for (std::size_t t = 0; t < assignment.column.counts.size(); ++t) {
        if (assignment.column.counts[t] > 0) {
          counts[instance.item_types[t].id] = assignment.column.counts[t];
        }
      }
      Json placements = Json::array();
      for (const Placement& p : assignment.column.witness.placements) {
        placements.push_back({{"item", instance.item_types[p.type].id}, {"x", p.x}, {"y", p.y}});
      }
      blocks.push_back({{"x", static_cast<long long>(std::llround(assignment.x))},
                        {"counts", std::move(counts)},
                        {"placements", std::move(placements)}});
    }
  }
  doc["patterns_detail"] = std::move(blocks);
  return doc.dump(2) + "\n";
}

void emit_solution(const Instance& instance, const SolverConfig& config,
                   const SearchResult& result, const std::string& path) {
  write_file(path, solution_to_text(instance, config, result));
}

LoadedSolution load_solution_text(const std::string& text) {
  const Json doc = parse_json(text, "solution");
  if (!doc.is_object() || !doc.contains("instance")) {
    throw InputError("solution: missing instance");
  }
  LoadedSolution loaded;
  loaded.instance = instance_from_json(doc["instance"], 0.0, "solution: instance");
  loaded.digest = doc.value("instance_digest", std::string());
  if (doc.contains("bins")) loaded.bins = doc["bins"].get<double>();
  if (doc.contains("patterns")) loaded.patterns = doc["patterns"].get<int>();
  if (doc.contains("best_bound")) loaded.best_bound = doc["best_bound"].get<double>();
  std::map<std::string, TypeIndex> index;
  for (TypeIndex t = 0; t < loaded.instance.num_types(); ++t) {
    index[loaded.instance.item_types[t].id] = t;
  }
  auto lookup = [&](const std::string& id, const std::string& where) {
    auto it = index.find(id);
    if (it == index.end()) throw InputError(where + ": unknown item id '" + id + "'");
    return it->second;
  };
  const Json blocks = doc.value("patterns_detail", Json::array());
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    const std::string where = "solution: patterns_detail[" + std::to_string(b) + "]";
    const Json& block = blocks[b];
    Assignment assignment;
    assignment.x = block.at("x").get<double>();
    assignment.column.counts.assign(loaded.instance.num_types(), 0);
    for (const auto& [id, count] : block.at("counts").items()) {
      assignment.column.counts[lookup(id, where)] = count.get<int>();
    }
    normalize_counts(assignment.column.counts);
    for (const Json& p : block.at("placements")) {
      assignment.column.witness.placements.push_back(
          {lookup(p.at("item").get<std::string>(), where), p.at("x").get<int>(),
           p.at("y").get<int>()});
    }
    loaded.assignments.push_back(std::move(assignment));
  }
  return loaded;
}

LoadedSolution load_solution(const std::string& path) {
  return load_solution_text(read_file(path));
}

VerifyReport verify_solution(const LoadedSolution& solution) {
  VerifyReport report;
  auto fail = [&](std::string problem) {
    report.ok = false;
    report.problems.push_back(std::move(problem));
  };
  const Instance& instance = solution.instance;
  if (!solution.digest.empty() && solution.digest != instance_digest(instance)) {
    fail("instance digest mismatch");
  }
  const TypeRegistry registry(instance);
  Counts totals(instance.num_types(), 0);
  double bins = 0.0;
  for (std::size_t b = 0; b < solution.assignments.size(); ++b) {
    const Assignment& assignment = solution.assignments[b];
    const std::string label = "pattern " + std::to_string(b);
    if (assignment.x < 1.0 || assignment.x != std::floor(assignment.x)) {
      fail(label + ": x must be a positive integer");
    }
    if (!verify_layout(assignment.column.witness, assignment.column.counts, registry, instance)) {
      fail(label + ": witness layout does not verify");
    }
    bins += assignment.x;
    for (std::size_t t = 0; t < assignment.column.counts.size(); ++t) {
      totals[t] += assignment.column.counts[t] * static_cast<int>(assignment.x);
    }
  }
  if (solution.bins) {
    for (TypeIndex t = 0; t < instance.num_types(); ++t) {
      const ItemType& item = instance.item_types[t];
      if (totals[t] < item.from || totals[t] > item.to) {
        fail("item '" + item.id + "': produced " + std::to_string(totals[t]) +
             " outside [" + std::to_string(item.from) + ", " + std::to_string(item.to) + "]");
      }
    }
    if (std::abs(*solution.bins - bins) > 1e-9) fail("bins does not match the patterns");
  }
  if (solution.patterns &&
      *solution.patterns != static_cast<int>(solution.assignments.size())) {
    fail("patterns does not match the pattern blocks");
  }
  return report;
}

namespace {

std::string xml_escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      case '"':
        out += "&quot;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

}  // namespace

std::string render_pattern_svg(const Column& column, const Instance& instance) {
  const int width = instance.bin_width;
  const int height = instance.bin_height;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "mm\" height=\""
      << height << "mm\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
  for (const Placement& p : column.witness.placements) {
    const ItemType& item = instance.item_types.at(p.type);
    // SVG y grows downwards; the layout origin is the bottom-left corner.
    const int top = height - p.y - item.height;
    svg << "  <g>\n";
    svg << "    <rect x=\"" << p.x << "\" y=\"" << top << "\" width=\"" << item.width
        << "\" height=\"" << item.height
        << "\" fill=\"#cfe3f7\" stroke=\"#1f4e79\" stroke-width=\"0.5\"/>\n";
    svg << "    <text x=\"" << p.x + item.width / 2.0 << "\" y=\"" << top + item.height / 2.0
        << "\" font-size=\"" << std::max(2, std::min(item.width, item.height) / 3)
        << "\" text-anchor=\"middle\" dominant-baseline=\"middle\">" << xml_escape(item.id) << "</text>\n";
    svg << "  </g>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void render_pattern(const Column& column, const Instance& instance, const std::string& path) {
  write_file(path, render_pattern_svg(column, instance));
}

}  // namespace pcbpack
