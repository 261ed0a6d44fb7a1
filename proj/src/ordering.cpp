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

#include "leochain/ordering.hpp"

#include "leochain/errors.hpp"

namespace leochain {

std::vector<GridCoord> leader_probe_order(const ServiceAreaWindow& window,
                                          int32_t leader_row_plane) {
  if (!window.contains_plane(leader_row_plane))
    throw ConfigError("leader row plane " + std::to_string(leader_row_plane) +
                      " does not intersect the service area");
  std::vector<GridCoord> order;
  // Members are stored plane-major, west to east.
  for (const GridCoord& m : window.members())
    if (m.plane == leader_row_plane) order.push_back(m);
  return {order.rbegin(), order.rend()};
}

GridCoord elect_leader(const ServiceAreaWindow& window, int32_t leader_row_plane,
                       const ResponsivePredicate& responsive) {
  for (const GridCoord& c : leader_probe_order(window, leader_row_plane))
    if (!responsive || responsive(c)) return c;
  throw InvariantViolation("no responsive leader-row node inside the service area");
}

std::optional<std::vector<Transaction>> Sequencer::enqueue(Transaction tx) {
  waiting_.push_back(std::move(tx));
  if (static_cast<int32_t>(waiting_.size()) < state_.batch_size) return std::nullopt;
  return flush();
}

std::vector<Transaction> Sequencer::flush() {
  std::vector<Transaction> batch = std::move(waiting_);
  waiting_.clear();
  return assign(std::move(batch));
}

std::vector<Transaction> Sequencer::assign(std::vector<Transaction> txs) {
  for (auto& tx : txs) {
    tx.seq = state_.next_seq++;
    tx.status = TxStatus::kOrdered;
  }
  return txs;
}

}  // namespace leochain
