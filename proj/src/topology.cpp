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

#include "leochain/topology.hpp"

#include <algorithm>
#include <cstdlib>

#include "leochain/errors.hpp"

namespace leochain {

std::string to_string(const GridCoord& c) {
  return "(" + std::to_string(c.plane) + "," + std::to_string(c.slot) + ")";
}

const char* to_string(Direction d) {
  switch (d) {
    case Direction::kNorth: return "north";
    case Direction::kEast: return "east";
    case Direction::kSouth: return "south";
    case Direction::kWest: return "west";
  }
  return "?";
}

TorusTopology::TorusTopology(int32_t planes, int32_t slots_per_plane)
    : planes_(planes), slots_(slots_per_plane) {
  std::vector<std::string> problems;
  if (planes < 1) problems.push_back("grid.planes must be >= 1");
  if (slots_per_plane < 3) problems.push_back("grid.slots_per_plane must be >= 3");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

void TorusTopology::check(const GridCoord& c) const {
  if (!contains(c)) {
    throw DomainError("coordinate " + to_string(c) + " outside " +
                      std::to_string(planes_) + "x" + std::to_string(slots_) + " grid");
  }
}

size_t TorusTopology::index(const GridCoord& c) const {
  check(c);
  return static_cast<size_t>(c.plane) * static_cast<size_t>(slots_) +
         static_cast<size_t>(c.slot);
}

GridCoord TorusTopology::coord(size_t index) const {
  if (index >= node_count()) throw DomainError("node index out of range");
  return GridCoord{static_cast<int32_t>(index / static_cast<size_t>(slots_)),
                   static_cast<int32_t>(index % static_cast<size_t>(slots_))};
}

int32_t TorusTopology::wrap_slot(int64_t s) const {
  const int64_t w = slots_;
  return static_cast<int32_t>(((s % w) + w) % w);
}

int32_t TorusTopology::wrap_plane(int64_t p) const {
  const int64_t n = planes_;
  return static_cast<int32_t>(((p % n) + n) % n);
}

GridCoord TorusTopology::neighbor(const GridCoord& c, Direction d) const {
  check(c);
  switch (d) {
    case Direction::kNorth: return {wrap_plane(int64_t{c.plane} - 1), c.slot};
    case Direction::kSouth: return {wrap_plane(int64_t{c.plane} + 1), c.slot};
    case Direction::kEast: return {c.plane, wrap_slot(int64_t{c.slot} + 1)};
    case Direction::kWest: return {c.plane, wrap_slot(int64_t{c.slot} - 1)};
  }
  return c;
}

Neighbors TorusTopology::neighbors(const GridCoord& c) const {
  Neighbors n;
  for (Direction d : kAllDirections) n.by_direction[static_cast<size_t>(d)] = neighbor(c, d);
  return n;
}

std::optional<Direction> TorusTopology::direction_to(const GridCoord& from,
                                                     const GridCoord& to) const {
  check(to);
  const Neighbors n = neighbors(from);
  for (Direction d : kAllDirections) {
    if (n[d] == to) return d;
  }
  return std::nullopt;
}

int32_t TorusTopology::slot_delta(int32_t from, int32_t to) const {
  int32_t east = wrap_slot(int64_t{to} - from);
  return east <= slots_ - east ? east : east - slots_;
}

int32_t TorusTopology::plane_delta(int32_t from, int32_t to) const {
  int32_t south = wrap_plane(int64_t{to} - from);
  return south <= planes_ - south ? south : south - planes_;
}

int32_t TorusTopology::distance(const GridCoord& a, const GridCoord& b) const {
  check(a);
  check(b);
  return std::abs(slot_delta(a.slot, b.slot)) + std::abs(plane_delta(a.plane, b.plane));
}

std::vector<GridCoord> TorusTopology::all_coords() const {
  std::vector<GridCoord> out;
  out.reserve(node_count());
  for (int32_t p = 0; p < planes_; ++p)
    for (int32_t s = 0; s < slots_; ++s) out.push_back({p, s});
  return out;
}

void ServiceAreaSpec::validate(const TorusTopology& topo) const {
  std::vector<std::string> problems;
  const int32_t w = topo.slots_per_plane();
  if (slot_width < 1) problems.push_back("service_area.slot_width must be >= 1");
  if (slot_width > w)
    problems.push_back("service_area.slot_width " + std::to_string(slot_width) +
                       " exceeds slots_per_plane " + std::to_string(w));
  if (plane_first < 0 || plane_first >= topo.planes())
    problems.push_back("service_area.plane_first outside grid");
  if (plane_last < 0 || plane_last >= topo.planes())
    problems.push_back("service_area.plane_last outside grid");
  if (plane_first > plane_last)
    problems.push_back("service_area plane range is empty (plane_first > plane_last)");
  if (anchor_slot < 0 || anchor_slot >= w)
    problems.push_back("service_area.anchor_slot outside grid");
  if (!stationary && periods_per_cycle != w)
    problems.push_back("service_area.periods_per_cycle must equal slots_per_plane (" +
                       std::to_string(w) + ") for a moving window");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

ServiceAreaWindow::ServiceAreaWindow(const TorusTopology& topo,
                                     const ServiceAreaSpec& spec, int64_t period)
    : period_(period),
      planes_(topo.planes()),
      slots_(topo.slots_per_plane()),
      plane_first_(spec.plane_first),
      plane_count_(spec.plane_count()),
      west_slot_(topo.wrap_slot(int64_t{spec.anchor_slot} + (spec.stationary ? 0 : period))),
      width_(spec.slot_width) {
  members_.reserve(size());
  for (int32_t p = plane_first_; p < plane_first_ + plane_count_; ++p)
    for (int32_t off = 0; off < width_; ++off)
      members_.push_back({p, topo.wrap_slot(int64_t{west_slot_} + off)});
}

int32_t ServiceAreaWindow::east_slot() const noexcept {
  return (west_slot_ + width_ - 1) % slots_;
}

int32_t ServiceAreaWindow::slot_offset(int32_t slot) const noexcept {
  return ((slot - west_slot_) % slots_ + slots_) % slots_;
}

bool ServiceAreaWindow::contains_plane(int32_t plane) const noexcept {
  return plane >= plane_first_ && plane < plane_first_ + plane_count_;
}

bool ServiceAreaWindow::contains(const GridCoord& c) const noexcept {
  if (c.slot < 0 || c.slot >= slots_) return false;
  return contains_plane(c.plane) && slot_offset(c.slot) < width_;
}

std::vector<GridCoord> ServiceAreaWindow::column(int32_t slot) const {
  std::vector<GridCoord> out;
  for (int32_t p = plane_first_; p < plane_first_ + plane_count_; ++p)
    out.push_back({p, slot});
  return out;
}

std::vector<GridCoord> ServiceAreaWindow::west_edge() const { return column(west_slot_); }
std::vector<GridCoord> ServiceAreaWindow::east_edge() const { return column(east_slot()); }

ServiceAreaWindow service_area_at(int64_t period, const ServiceAreaSpec& spec,
                                  const TorusTopology& topo) {
  if (period < 0) throw DomainError("period must be >= 0");
  spec.validate(topo);
  return ServiceAreaWindow(topo, spec, period);
}

MembershipDelta membership_delta(int64_t period, const ServiceAreaSpec& spec,
                                 const TorusTopology& topo) {
  if (period < 1) throw DomainError("membership_delta requires period >= 1");
  const ServiceAreaWindow before = service_area_at(period - 1, spec, topo);
  const ServiceAreaWindow after = service_area_at(period, spec, topo);
  MembershipDelta delta;
  for (const auto& c : after.members())
    if (!before.contains(c)) delta.entering.push_back(c);
  for (const auto& c : before.members())
    if (!after.contains(c)) delta.exiting.push_back(c);
  return delta;
}

}  // namespace leochain
