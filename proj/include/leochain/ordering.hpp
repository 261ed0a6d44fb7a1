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

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "leochain/ledger.hpp"
#include "leochain/topology.hpp"

namespace leochain {

/// Ordering role held by exactly one leader-row node. Travels intact across
/// handovers.
struct LeaderState {
  int32_t leader_row_plane = 0;
  GridCoord current_leader;
  Seq next_seq = 1;
  int32_t batch_size = 1;
};

using ResponsivePredicate = std::function<bool(const GridCoord&)>;

/// East-most responsive leader-row member of `window`, probing westward on
/// non-response. Throws InvariantViolation ("no responsive leader") when the
/// leader row has no responsive member, and ConfigError when the leader row
/// does not intersect the window.
GridCoord elect_leader(const ServiceAreaWindow& window, int32_t leader_row_plane,
                       const ResponsivePredicate& responsive = {});

/// Leader-row members in probe order (east-most first).
std::vector<GridCoord> leader_probe_order(const ServiceAreaWindow& window,
                                          int32_t leader_row_plane);

/// Leader-side sequencer. Executed transactions queue up until a batch is
/// full (or flushed), then receive consecutive global seqs in arrival order.
class Sequencer {
 public:
  explicit Sequencer(LeaderState state) : state_(state) {}

  const LeaderState& state() const noexcept { return state_; }
  LeaderState& state() noexcept { return state_; }

  /// Returns a full batch once batch_size transactions are waiting.
  std::optional<std::vector<Transaction>> enqueue(Transaction tx);
  /// Orders whatever is waiting (possibly nothing).
  std::vector<Transaction> flush();
  size_t waiting() const noexcept { return waiting_.size(); }

 private:
  std::vector<Transaction> assign(std::vector<Transaction> txs);

  LeaderState state_;
  std::vector<Transaction> waiting_;
};

}  // namespace leochain
