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

#include "leochain/gossip.hpp"

#include <cstdlib>
#include <limits>

#include "leochain/errors.hpp"

namespace leochain {

bool GossipState::mark(MessageId id, int64_t period) {
  return seen_.emplace(id, period).second;
}

void GossipState::evict_before(int64_t period) {
  for (auto it = seen_.begin(); it != seen_.end();) {
    if (it->second < period - 1)
      it = seen_.erase(it);
    else
      ++it;
  }
}

std::vector<Direction> forward_directions(const TorusTopology& topo,
                                          const ServiceAreaWindow& window, const GridCoord& at,
                                          std::optional<Direction> arrival) {
  std::vector<Direction> out;
  const Neighbors n = topo.neighbors(at);
  for (Direction d : kAllDirections) {
    if (arrival && d == *arrival) continue;
    if (n[d] == at || !window.contains(n[d])) continue;
    out.push_back(d);
  }
  return out;
}

Tick forward_delay(GossipPolicy policy, Direction d) {
  return policy == GossipPolicy::kEastWestFirst && !in_plane(d) ? 1 : 0;
}

BroadcastResult gossip_broadcast(const TorusTopology& topo, const ServiceAreaWindow& window,
                                 const GridCoord& origin, NetworkOptions options,
                                 GossipPolicy policy) {
  if (!window.contains(origin))
    throw ProtocolViolation("broadcast origin " + to_string(origin) + " outside service area");

  Network net(topo, options, nullptr);
  std::vector<GossipState> states(topo.node_count());
  BroadcastResult result;
  result.process_count.assign(topo.node_count(), 0);
  const MessageId id = net.next_message_id();
  const auto payload = make_payload(GossipBody{LeaderAnnouncement{origin}});

  auto forward = [&](const GridCoord& at, std::optional<Direction> arrival) {
    for (Direction d : forward_directions(topo, window, at, arrival)) {
      Message m;
      m.id = id;
      m.kind = MessageKind::kGossip;
      m.src = at;
      m.dst = topo.neighbor(at, d);
      m.origin = origin;
      m.target = m.dst;
      m.arrival = opposite(d);
      m.payload = payload;
      net.send(std::move(m), forward_delay(policy, d));
    }
  };

  net.set_handler([&](const Message& m) {
    if (!states[topo.index(m.dst)].mark(m.id, window.period())) return;
    ++result.process_count[topo.index(m.dst)];
    result.delivered.push_back(m.dst);
    forward(m.dst, m.arrival);
  });

  states[topo.index(origin)].mark(id, window.period());
  ++result.process_count[topo.index(origin)];
  result.delivered.push_back(origin);
  forward(origin, std::nullopt);
  result.ticks = net.run_until_quiescent();
  result.messages = net.sent_count();
  return result;
}

Direction next_hop(const TorusTopology& topo, const GridCoord& from, const GridCoord& to) {
  topo.check(from);
  topo.check(to);
  if (const int32_t ds = topo.slot_delta(from.slot, to.slot); ds != 0)
    return ds > 0 ? Direction::kEast : Direction::kWest;
  if (const int32_t dp = topo.plane_delta(from.plane, to.plane); dp != 0)
    return dp > 0 ? Direction::kSouth : Direction::kNorth;
  throw ProtocolViolation("next_hop called with from == to");
}

std::vector<GridCoord> route_path(const TorusTopology& topo, const GridCoord& src,
                                  const GridCoord& dst) {
  std::vector<GridCoord> path;
  GridCoord at = src;
  while (at != dst) {
    at = topo.neighbor(at, next_hop(topo, at, dst));
    path.push_back(at);
  }
  return path;
}

GridCoord nearest_member(const TorusTopology& topo, const ServiceAreaWindow& window,
                         const GridCoord& src) {
  topo.check(src);
  if (window.size() == 0) throw ConfigError("service area window is empty");
  if (window.contains(src)) return src;
  GridCoord best{};
  int32_t best_dist = std::numeric_limits<int32_t>::max();
  int32_t best_east = 0;
  for (const GridCoord& m : window.members()) {
    const int32_t d = topo.distance(src, m);
    const int32_t east = topo.wrap_slot(int64_t{m.slot} - src.slot);
    const bool better = d < best_dist ||
                        (d == best_dist && (m.plane < best.plane ||
                                            (m.plane == best.plane && east < best_east)));
    if (better) {
      best = m;
      best_dist = d;
      best_east = east;
    }
  }
  return best;
}

}  // namespace leochain
