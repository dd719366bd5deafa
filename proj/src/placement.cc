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

#include "pcbpack/placement.h"

#include <algorithm>
#include <stdexcept>

namespace pcbpack {

BottomLeftPacker::BottomLeftPacker(BinSize bin, int spacing)
    : bin_(bin), spacing_(spacing) {
  candidates_.insert({0, 0});
}

bool BottomLeftPacker::fits(const Rect& candidate) const {
  if (candidate.x < 0 || candidate.y < 0 || candidate.x + candidate.w > bin_.width ||
      candidate.y + candidate.h > bin_.height) {
    return false;
  }
  // Most rejections come from recently placed neighbours.
  for (auto it = placed_.rbegin(); it != placed_.rend(); ++it) {
    if (!separated(candidate, *it, spacing_)) return false;
  }
  return true;
}

bool BottomLeftPacker::is_dead(const CandidatePoint& point) const {
  if (point.x >= bin_.width || point.y >= bin_.height) return true;
  for (const Rect& r : placed_) {
    if (r.x - spacing_ <= point.x && point.x < r.x + r.w + spacing_ &&
        r.y - spacing_ <= point.y && point.y < r.y + r.h + spacing_) {
      return true;
    }
  }
  return false;
}

void BottomLeftPacker::add_candidate(CandidatePoint point) {
  if (!is_dead(point)) candidates_.insert(point);
}

std::optional<Rect> BottomLeftPacker::place(int w, int h) {
  if (w <= 0 || h <= 0) throw std::invalid_argument("rectangle sides must be positive");
  for (const CandidatePoint& point : candidates_) {
    const Rect candidate{point.x, point.y, w, h};
    if (!fits(candidate)) continue;
    placed_.push_back(candidate);
    const Rect& r = placed_.back();
    for (auto it = candidates_.begin(); it != candidates_.end();) {
      if (r.x - spacing_ <= it->x && it->x < r.x + r.w + spacing_ &&
          r.y - spacing_ <= it->y && it->y < r.y + r.h + spacing_) {
        it = candidates_.erase(it);
      } else {
        ++it;
      }
    }
    add_candidate({r.x + r.w + spacing_, r.y});
    add_candidate({r.x, r.y + r.h + spacing_});
    return r;
  }
  return std::nullopt;
}

std::optional<std::vector<Rect>> bottom_left_place(std::span<const Size> rectangles,
                                                   BinSize bin, int spacing) {
  BottomLeftPacker packer(bin, spacing);
  for (const Size& size : rectangles) {
    if (!packer.place(size.w, size.h)) return std::nullopt;
  }
  return packer.placed();
}

std::vector<TypeIndex> default_order(const Counts& counts, const TypeRegistry& registry) {
  std::vector<TypeIndex> order;
  for (std::size_t t = 0; t < counts.size(); ++t) {
    if (counts[t] <= 0) continue;
    const auto sequence = registry.rectangle_sequence(static_cast<TypeIndex>(t));
    for (int copy = 0; copy < counts[t]; ++copy) {
      order.insert(order.end(), sequence.begin(), sequence.end());
    }
  }
  return order;
}

namespace {

Counts tally(std::span<const TypeIndex> order) {
  Counts result;
  for (TypeIndex t : order) {
    if (t < 0) throw std::invalid_argument("negative type index");
    if (static_cast<int>(result.size()) <= t) result.resize(t + 1, 0);
    ++result[t];
  }
  normalize_counts(result);
  return result;
}

}  // namespace

std::optional<Layout> place_counts(const Counts& counts,
                                   std::span<const TypeIndex> order,
                                   const TypeRegistry& registry,
                                   const Instance& instance) {
  if (!counts_equal(tally(order), expand_counts(counts, registry))) {
    throw std::invalid_argument("placement order does not match the expanded counts");
  }
  std::vector<Size> sizes;
  sizes.reserve(order.size());
  for (TypeIndex t : order) {
    const ItemType& item = instance.item_types.at(t);
    sizes.push_back({item.width, item.height});
  }
  auto rects = bottom_left_place(sizes, {instance.bin_width, instance.bin_height},
                                 instance.spacing);
  if (!rects) return std::nullopt;
  Layout layout;
  layout.placements.reserve(order.size());
  for (std::size_t k = 0; k < order.size(); ++k) {
    layout.placements.push_back({order[k], (*rects)[k].x, (*rects)[k].y});
  }
  return layout;
}

std::optional<Layout> place_counts(const Counts& counts, const TypeRegistry& registry,
                                   const Instance& instance) {
  const auto order = default_order(counts, registry);
  return place_counts(counts, order, registry, instance);
}

bool verify_layout(const Layout& layout, const Counts& counts,
                   const TypeRegistry& registry, const Instance& instance) {
  std::vector<Rect> rects;
  rects.reserve(layout.placements.size());
  Counts seen;
  for (const Placement& p : layout.placements) {
    if (p.type < 0 || p.type >= instance.num_types()) return false;
    const ItemType& item = instance.item_types[p.type];
    const Rect r{p.x, p.y, item.width, item.height};
    if (r.x < 0 || r.y < 0 || r.x + r.w > instance.bin_width ||
        r.y + r.h > instance.bin_height) {
      return false;
    }
    rects.push_back(r);
    if (static_cast<int>(seen.size()) <= p.type) seen.resize(p.type + 1, 0);
    ++seen[p.type];
  }
  for (std::size_t a = 0; a < rects.size(); ++a) {
    for (std::size_t b = a + 1; b < rects.size(); ++b) {
      if (!separated(rects[a], rects[b], instance.spacing)) return false;
    }
  }
  try {
    return counts_equal(seen, expand_counts(counts, registry));
  } catch (const std::exception&) {
    return false;
  }
}

}  // namespace pcbpack
