// Copyright 2026 The Leochain Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Constellation geometry: a +GRID inter-satellite-link torus of orbital
// planes (rows) by in-plane slots (columns), and the geo-fixed service area
// expressed as a window over fixed grid coordinates.
//
// Frame: satellites keep their grid coordinates; the service area moves one
// slot east per period, which is the relative motion of satellites drifting
// one slot west under a fixed patch of earth. Nodes therefore enter on the
// east edge and leave from the west edge.

#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace leochain {

struct GridCoord {
  int32_t plane = 0;
  int32_t slot = 0;

  friend constexpr auto operator<=>(const GridCoord&, const GridCoord&) = default;
};

std::string to_string(const GridCoord& c);

enum class Direction : uint8_t { kNorth = 0, kEast = 1, kSouth = 2, kWest = 3 };

inline constexpr std::array<Direction, 4> kAllDirections = {
    Direction::kNorth, Direction::kEast, Direction::kSouth, Direction::kWest};

constexpr Direction opposite(Direction d) {
  return static_cast<Direction>((static_cast<uint8_t>(d) + 2) % 4);
}
constexpr bool in_plane(Direction d) {
  return d == Direction::kEast || d == Direction::kWest;
}
const char* to_string(Direction d);

/// Four neighbors indexed by Direction.
struct Neighbors {
  std::array<GridCoord, 4> by_direction;

  const GridCoord& operator[](Direction d) const {
    return by_direction[static_cast<size_t>(d)];
  }
};

class TorusTopology {
 public:
  /// Requires planes >= 1 and slots_per_plane >= 3; throws ConfigError.
  TorusTopology(int32_t planes, int32_t slots_per_plane);

  int32_t planes() const noexcept { return planes_; }
  int32_t slots_per_plane() const noexcept { return slots_; }
  size_t node_count() const noexcept {
    return static_cast<size_t>(planes_) * static_cast<size_t>(slots_);
  }

  /// Fewer than three planes: north and south neighbors coincide (or are the
  /// node itself when there is a single plane).
  bool degenerate() const noexcept { return planes_ < 3; }

  bool contains(const GridCoord& c) const noexcept {
    return c.plane >= 0 && c.plane < planes_ && c.slot >= 0 && c.slot < slots_;
  }
  /// Throws DomainError when `c` is outside the grid.
  void check(const GridCoord& c) const;

  size_t index(const GridCoord& c) const;
  GridCoord coord(size_t index) const;

  Neighbors neighbors(const GridCoord& c) const;
  GridCoord neighbor(const GridCoord& c, Direction d) const;

  /// Direction from `from` to `to` when they are adjacent. For degenerate
  /// grids where two directions lead to the same node, the first match in
  /// kAllDirections order wins.
  std::optional<Direction> direction_to(const GridCoord& from,
                                        const GridCoord& to) const;

  /// Shortest hop count on the torus.
  int32_t distance(const GridCoord& a, const GridCoord& b) const;

  /// Signed shortest in-plane displacement from `from` to `to`, positive
  /// eastward. Ties (exactly half the ring) resolve eastward.
  int32_t slot_delta(int32_t from, int32_t to) const;
  /// Signed shortest cross-plane displacement, positive southward (increasing
  /// plane index). Ties resolve southward.
  int32_t plane_delta(int32_t from, int32_t to) const;

  int32_t wrap_slot(int64_t s) const;
  int32_t wrap_plane(int64_t p) const;

  std::vector<GridCoord> all_coords() const;

  friend bool operator==(const TorusTopology&, const TorusTopology&) = default;

 private:
  int32_t planes_;
  int32_t slots_;
};

/// Geo-fixed service area as a rectangle: a contiguous range of planes by
/// `slot_width` consecutive slots whose west edge sits at `anchor_slot` in
/// period 0 and moves one slot east per period.
struct ServiceAreaSpec {
  int32_t plane_first = 0;
  int32_t plane_last = 0;
  int32_t slot_width = 1;
  int32_t anchor_slot = 0;
  /// Periods until the window returns to its anchor. Must equal the ring
  /// size for a moving window (one slot of motion per period).
  int32_t periods_per_cycle = 0;
  /// A stationary window never moves; used for migration-free baselines.
  bool stationary = false;

  int32_t plane_count() const noexcept { return plane_last - plane_first + 1; }

  /// Throws ConfigError listing every problem.
  void validate(const TorusTopology& topo) const;

  friend bool operator==(const ServiceAreaSpec&, const ServiceAreaSpec&) = default;
};

/// The set of grid nodes inside the service area during one period.
class ServiceAreaWindow {
 public:
  ServiceAreaWindow(const TorusTopology& topo, const ServiceAreaSpec& spec,
                    int64_t period);

  int64_t period() const noexcept { return period_; }
  int32_t west_slot() const noexcept { return west_slot_; }
  int32_t east_slot() const noexcept;
  int32_t width() const noexcept { return width_; }
  int32_t plane_first() const noexcept { return plane_first_; }
  int32_t plane_count() const noexcept { return plane_count_; }
  size_t size() const noexcept {
    return static_cast<size_t>(width_) * static_cast<size_t>(plane_count_);
  }
  bool spans_all_planes() const noexcept { return plane_count_ == planes_; }

  bool contains(const GridCoord& c) const noexcept;
  bool contains_plane(int32_t plane) const noexcept;
  /// Eastward offset of `slot` from the west edge, in [0, width) for members.
  int32_t slot_offset(int32_t slot) const noexcept;

  /// Members ordered by plane, then west-to-east.
  const std::vector<GridCoord>& members() const noexcept { return members_; }
  std::vector<GridCoord> west_edge() const;
  std::vector<GridCoord> east_edge() const;

  friend bool operator==(const ServiceAreaWindow& a, const ServiceAreaWindow& b) {
    return a.members_ == b.members_;
  }

 private:
  std::vector<GridCoord> column(int32_t slot) const;

  int64_t period_;
  int32_t planes_;
  int32_t slots_;
  int32_t plane_first_;
  int32_t plane_count_;
  int32_t west_slot_;
  int32_t width_;
  std::vector<GridCoord> members_;
};

/// Window for `period`; throws ConfigError for an invalid spec and
/// DomainError for a negative period.
ServiceAreaWindow service_area_at(int64_t period, const ServiceAreaSpec& spec,
                                  const TorusTopology& topo);

struct MembershipDelta {
  std::vector<GridCoord> entering;  // in window(period), not in window(period-1)
  std::vector<GridCoord> exiting;   // in window(period-1), not in window(period)
};

/// Requires period >= 1.
MembershipDelta membership_delta(int64_t period, const ServiceAreaSpec& spec,
                                 const TorusTopology& topo);

}  // namespace leochain

template <>
struct std::hash<leochain::GridCoord> {
  size_t operator()(const leochain::GridCoord& c) const noexcept {
    return std::hash<uint64_t>{}((static_cast<uint64_t>(static_cast<uint32_t>(c.plane)) << 32) |
                                 static_cast<uint32_t>(c.slot));
  }
};
