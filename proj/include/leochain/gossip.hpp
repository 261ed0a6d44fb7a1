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

// Service-area gossip and wraparound routing.
//
// Forwarding rule: a broadcast origin sends to each of its four neighbors
// that is inside the window. A member receiving an id for the first time
// processes it and forwards to the three directions other than the one it
// arrived from, skipping non-members. Repeats are dropped.

#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "leochain/message.hpp"
#include "leochain/network.hpp"
#include "leochain/topology.hpp"

namespace leochain {

enum class GossipPolicy : uint8_t {
  kAllDirections,  // every forward leaves on the next tick
  kEastWestFirst,  // cross-plane forwards wait one extra tick
};

/// Seen-set with period-scoped retention.
class GossipState {
 public:
  /// Returns true when `id` had not been seen (and records it).
  bool mark(MessageId id, int64_t period);
  bool seen(MessageId id) const { return seen_.count(id) != 0; }
  /// Keeps ids recorded in `period` and `period - 1`.
  void evict_before(int64_t period);
  size_t size() const noexcept { return seen_.size(); }

 private:
  std::unordered_map<MessageId, int64_t> seen_;
};

/// Directions to forward into from `at`. `arrival` is empty at the origin.
std::vector<Direction> forward_directions(const TorusTopology& topo,
                                          const ServiceAreaWindow& window, const GridCoord& at,
                                          std::optional<Direction> arrival);

/// Extra delay applied to a forward in direction `d` under `policy`.
Tick forward_delay(GossipPolicy policy, Direction d);

/// Outcome of an isolated broadcast on an otherwise idle network.
struct BroadcastResult {
  uint64_t messages = 0;
  std::vector<GridCoord> delivered;        // members that processed the payload
  std::vector<uint32_t> process_count;     // by node index
  Tick ticks = 0;
};

/// Runs one broadcast from `origin` to quiescence using the same forwarding
/// code as the full simulation. Throws ProtocolViolation when `origin` is
/// not a member (route it into the window first).
BroadcastResult gossip_broadcast(const TorusTopology& topo, const ServiceAreaWindow& window,
                                 const GridCoord& origin, NetworkOptions options = {},
                                 GossipPolicy policy = GossipPolicy::kAllDirections);

// --- routing ------------------------------------------------------------------

/// Next hop from `from` toward `to`: close the slot gap along the shorter
/// east/west arc first, then the plane gap along the shorter north/south
/// arc. Requires from != to.
Direction next_hop(const TorusTopology& topo, const GridCoord& from, const GridCoord& to);

/// Nodes visited after `src`, ending at `dst`; empty when src == dst.
std::vector<GridCoord> route_path(const TorusTopology& topo, const GridCoord& src,
                                  const GridCoord& dst);

/// Window member closest to `src`, ties broken by smaller plane index and
/// then by smaller eastward slot offset from `src`. Members map to
/// themselves. Throws ConfigError for an empty window.
GridCoord nearest_member(const TorusTopology& topo, const ServiceAreaWindow& window,
                         const GridCoord& src);

}  // namespace leochain
