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

#include <filesystem>
#include <fstream>
#include <random>
#include <regex>

#include "gtest/gtest.h"
#include "pcbpack/placement.h"
#include "test_util.h"

namespace pcbpack {
namespace {

using testing::counts_of;
using testing::make_instance;

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("pcbpack_io_test_" + name)).string();
}

TEST(ParseInstanceTest, BundledRecords) {
  const Instance r1 = parse_instance(*bundled_record_path("r1"));
  EXPECT_EQ(r1.num_types(), 3);
  EXPECT_EQ(r1.bin_width, 614);
  EXPECT_EQ(r1.bin_height, 512);
  EXPECT_EQ(r1.spacing, 6);
  EXPECT_EQ(r1.item_types[0].from, 50);
  EXPECT_EQ(r1.item_types[0].to, 57);
  EXPECT_EQ(r1.item_types[2].to, 2300);

  const Instance r5 = parse_instance(*bundled_record_path("r5"));
  ASSERT_EQ(r5.num_types(), 10);
  EXPECT_EQ(r5.item_types[9].width, 27);
  EXPECT_EQ(r5.item_types[9].height, 18);
  EXPECT_EQ(r5.item_types[9].from, 5000);
  for (const char* name : {"r2", "r3", "r4"}) {
    ASSERT_TRUE(bundled_record_path(name));
    EXPECT_NO_THROW(parse_instance(*bundled_record_path(name)));
  }
  EXPECT_FALSE(bundled_record_path("r6"));
}

TEST(ParseInstanceTest, ResolvesBundledNames) {
  EXPECT_EQ(resolve_instance_path("r2"), *bundled_record_path("r2"));
}

TEST(ParseInstanceTest, OversizedItemRejected) {
  const std::string text = R"({"bin": {"width": 614, "height": 512}, "spacing": 6,
    "items": [{"id": "big", "width": 700, "height": 100, "from": 1}]})";
  try {
    parse_instance_text(text);
    FAIL() << "expected rejection";
  } catch (const InfeasibleInstance& e) {
    EXPECT_NE(std::string(e.what()).find("big"), std::string::npos);
  }
}

TEST(ParseInstanceTest, DiagnosticsNameTheField) {
  auto message = [](const std::string& text) {
    try {
      parse_instance_text(text);
    } catch (const InputError& e) {
      return std::string(e.what());
    }
    return std::string("no error");
  };
  EXPECT_NE(message("{not json").find("malformed"), std::string::npos);
  EXPECT_NE(message(R"({"spacing": 0, "items": []})").find("bin"), std::string::npos);
  EXPECT_NE(message(R"({"bin": {"width": 10, "height": 10}, "spacing": 0,
      "items": [{"id": "a", "width": 1, "height": 1, "from": 1},
                {"id": "b", "width": 1.5, "height": 1, "from": 1}]})")
                .find("items[1].width"),
            std::string::npos);
  EXPECT_NE(message(R"({"bin": {"width": 10, "height": 10}, "spacing": 0,
      "items": [{"id": "a", "width": 1, "height": 1, "from": 3, "to": 2}]})")
                .find("items[0]"),
            std::string::npos);
}

TEST(ParseInstanceTest, RateAppliesOnlyWhereToIsMissing) {
  const std::string text = R"({"bin": {"width": 10, "height": 10}, "spacing": 0,
    "items": [{"id": 1, "width": 1, "height": 1, "from": 10},
              {"id": 2, "width": 1, "height": 1, "from": 10, "to": 10}]})";
  const Instance instance = parse_instance_text(text, 0.5);
  EXPECT_EQ(instance.item_types[0].id, "1");
  EXPECT_EQ(instance.item_types[0].to, 15);
  EXPECT_EQ(instance.item_types[1].to, 10);
}

TEST(ParseInstanceTest, RoundTrip) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 50; ++trial) {
    Instance instance = testing::random_toy_instance(rng);
    instance.name = "toy " + std::to_string(trial);
    EXPECT_EQ(parse_instance_text(instance_to_text(instance)), instance);
  }
  const Instance r3 = parse_instance(*bundled_record_path("r3"));
  const std::string path = temp_path("r3.json");
  write_instance(r3, path);
  EXPECT_EQ(parse_instance(path), r3);
  EXPECT_EQ(instance_digest(parse_instance(path)), instance_digest(r3));
  std::filesystem::remove(path);
}

TEST(DigestTest, SensitiveToContent) {
  Instance a = make_instance(10, 10, 0, {{5, 5, 1, 2}});
  Instance b = a;
  b.item_types[0].to = 3;
  EXPECT_EQ(instance_digest(a).size(), 16u);
  EXPECT_NE(instance_digest(a), instance_digest(b));
}

TEST(SolutionFileTest, ToySolutionRoundTripsAndVerifies) {
  const Instance instance = make_instance(10, 10, 0, {{5, 5, 4, 4}});
  SolverConfig config;
  const SearchResult result = run(instance, config);
  const std::string text = solution_to_text(instance, config, result);
  const LoadedSolution loaded = load_solution_text(text);
  ASSERT_EQ(loaded.assignments.size(), 1u);
  EXPECT_EQ(loaded.assignments[0].x, 1.0);
  EXPECT_EQ(loaded.bins, 1.0);
  EXPECT_EQ(loaded.patterns, 1);
  EXPECT_EQ(loaded.digest, instance_digest(instance));
  EXPECT_TRUE(verify_solution(loaded).ok);
  EXPECT_EQ(solution_to_text(instance, config, run(instance, config)), text);
}

TEST(SolutionFileTest, NoIncumbentOmitsBins) {
  const Instance instance = parse_instance(*bundled_record_path("r1"));
  SolverConfig config;
  config.time_limit_seconds = 1e-9;
  const SearchResult result = run(instance, config);
  ASSERT_FALSE(result.incumbent);
  const std::string text = solution_to_text(instance, config, result);
  const LoadedSolution loaded = load_solution_text(text);
  EXPECT_FALSE(loaded.bins);
  EXPECT_TRUE(loaded.best_bound);
  EXPECT_TRUE(loaded.assignments.empty());
}

TEST(SolutionFileTest, TamperingIsDetected) {
  const Instance instance = make_instance(10, 10, 1, {{4, 4, 5, 8}});
  SolverConfig config;
  const SearchResult result = run(instance, config);
  ASSERT_TRUE(result.incumbent);
  LoadedSolution loaded = load_solution_text(solution_to_text(instance, config, result));
  ASSERT_TRUE(verify_solution(loaded).ok);

  LoadedSolution moved = loaded;
  moved.assignments[0].column.witness.placements[0].x += 1;
  EXPECT_FALSE(verify_solution(moved).ok);

  LoadedSolution short_run = loaded;
  short_run.assignments[0].x -= 1;
  EXPECT_FALSE(verify_solution(short_run).ok);

  LoadedSolution other = loaded;
  other.instance.item_types[0].to = 9;
  EXPECT_FALSE(verify_solution(other).ok);
}

TEST(SolutionFileTest, EmitAndLoadFromDisk) {
  const Instance instance = make_instance(10, 10, 0, {{5, 5, 4, 4}});
  SolverConfig config;
  const SearchResult result = run(instance, config);
  const std::string path = temp_path("solution.json");
  emit_solution(instance, config, result, path);
  EXPECT_TRUE(verify_solution(load_solution(path)).ok);
  std::filesystem::remove(path);
  EXPECT_THROW(emit_solution(instance, config, result, "/nonexistent/dir/out.json"),
               std::runtime_error);
}

TEST(RenderTest, EmptyColumnDrawsOutlineOnly) {
  const Instance instance = make_instance(10, 10, 1, {{4, 4, 0, 4}});
  const std::string svg = render_pattern_svg(Column{}, instance);
  EXPECT_NE(svg.find("<svg"), std::string::npos);
  EXPECT_EQ(std::count(svg.begin(), svg.end(), '\n'), 3);
  EXPECT_EQ(svg.find("<text"), std::string::npos);
}

TEST(RenderTest, FourSquares) {
  const Instance instance = make_instance(10, 10, 1, {{4, 4, 0, 4}});
  const TypeRegistry registry(instance);
  Column column;
  column.counts = counts_of({{0, 4}});
  column.witness = *place_counts(column.counts, registry, instance);
  const std::string svg = render_pattern_svg(column, instance);
  // Layout (x, y) is drawn at SVG (x, 10 - y - 4).
  for (const char* rect : {R"(x="0" y="6")", R"(x="5" y="6")", R"(x="0" y="1")",
                           R"(x="5" y="1")"}) {
    EXPECT_NE(svg.find(std::string("<rect ") + rect), std::string::npos) << rect;
  }
  const std::regex label(">A</text>");
  EXPECT_EQ(std::distance(std::sregex_iterator(svg.begin(), svg.end(), label),
                          std::sregex_iterator()),
            4);
}

TEST(RenderTest, CompoundsDrawnAsConstituents) {
  const Instance instance = make_instance(20, 10, 0, {{4, 4, 1, 2}, {5, 5, 1, 2}});
  TypeRegistry registry(instance);
  const TypeIndex c = registry.add_compound(0, 1);
  Column column;
  column.counts = counts_of({{c, 1}});
  column.witness = *place_counts(column.counts, registry, instance);
  const std::string svg = render_pattern_svg(column, instance);
  EXPECT_NE(svg.find(">A</text>"), std::string::npos);
  EXPECT_NE(svg.find(">B</text>"), std::string::npos);
}

TEST(RenderTest, LabelsAreEscaped) {
  Instance instance = make_instance(10, 10, 0, {{4, 4, 0, 1}});
  instance.item_types[0].id = "a<b&c";
  const TypeRegistry registry(instance);
  Column column;
  column.counts = counts_of({{0, 1}});
  column.witness = *place_counts(column.counts, registry, instance);
  EXPECT_NE(render_pattern_svg(column, instance).find(">a&lt;b&amp;c</text>"),
            std::string::npos);
}

}  // namespace
}  // namespace pcbpack
