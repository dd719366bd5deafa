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

#ifndef PCBPACK_PLACEMENT_H_
#define PCBPACK_PLACEMENT_H_

#include <optional>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "pcbpack/model.h"

namespace pcbpack {

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  bool operator==(const Rect&) const = default;
};

struct Size {
  int w = 0;
  int h = 0;
};

struct BinSize {
  int width = 0;
  int height = 0;
};

// Candidate corner for the bottom-left rule.
struct CandidatePoint {
  int x = 0;
  int y = 0;

  // Bottom-left order: lowest y, then lowest x.
  friend bool operator<(const CandidatePoint& a, const CandidatePoint& b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
  }
  bool operator==(const CandidatePoint&) const = default;
};

// True iff the two rectangles keep an axis gap of at least d. Bin edges need
// no clearance.
inline bool separated(const Rect& r1, const Rect& r2, int d) {
  return r1.x + r1.w + d <= r2.x || r2.x + r2.w + d <= r1.x ||
         r1.y + r1.h + d <= r2.y || r2.y + r2.h + d <= r1.y;
}

// Incremental bottom-left packer for one bin.
//
// Candidates are (0,0) plus, for every placed rectangle r, the points
// (r.x + r.w + d, r.y) and (r.x, r.y + r.h + d). A new rectangle goes to the
// feasible candidate with minimal y, ties by minimal x. Candidates that no
// rectangle of positive size can ever use are discarded eagerly; this does not
// change which candidate wins.
class BottomLeftPacker {
 public:
  BottomLeftPacker(BinSize bin, int spacing);

  // Places a w x h rectangle; returns its position or nullopt (packer state is
  // left untouched on failure).
  std::optional<Rect> place(int w, int h);

  const std::vector<Rect>& placed() const { return placed_; }

 private:
  bool fits(const Rect& candidate) const;
  bool is_dead(const CandidatePoint& point) const;
  void add_candidate(CandidatePoint point);

  BinSize bin_;
  int spacing_;
  std::vector<Rect> placed_;
  std::set<CandidatePoint> candidates_;
};

// Places the rectangles in the given order. Returns the placed rectangles (same
// order as the input) or nullopt when some rectangle finds no feasible point.
std::optional<std::vector<Rect>> bottom_left_place(std::span<const Size> rectangles,
                                                   BinSize bin, int spacing);

// Rectangle order used for a count vector when none is given: types in
// registry order, copies contiguous, compounds expanded in constituent order.
std::vector<TypeIndex> default_order(const Counts& counts, const TypeRegistry& registry);

// Places the original rectangles of `counts` in the order given (original type
// ids with multiplicity). `order` must be a permutation of the expanded
// multiset; std::invalid_argument otherwise.
std::optional<Layout> place_counts(const Counts& counts,
                                   std::span<const TypeIndex> order,
                                   const TypeRegistry& registry,
                                   const Instance& instance);
std::optional<Layout> place_counts(const Counts& counts, const TypeRegistry& registry,
                                   const Instance& instance);

// Independent layout checker: every rectangle inside the bin, all pairs
// separated, placement multiset equal to expand_counts(counts).
bool verify_layout(const Layout& layout, const Counts& counts,
                   const TypeRegistry& registry, const Instance& instance);

}  // namespace pcbpack

#endif  // PCBPACK_PLACEMENT_H_
