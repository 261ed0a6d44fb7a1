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

// Neighbor migration. Everything here is computed from topology alone: a
// node knows its own orbital path, so no messages are needed to decide who
// syncs from whom or when the leader must hand over.
//
// Sync payload document (schema "leochain.sync/1"):
//
//   {"schema":"leochain.sync/1","last_height":H,"next_expected_seq":N,
//    "known_leader":[p,s] | null,
//    "blocks":[<block>...],
//    "state":[{"key":K,"value":V,"version":n,"last_block":h}...],
//    "records":[{"seq":n,"id":"tx-..","committed":true,"reason":""}...]}
//
// Blocks use the chain golden-file encoding.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "leochain/ledger.hpp"
#include "leochain/message.hpp"
#include "leochain/ordering.hpp"
#include "leochain/topology.hpp"

namespace leochain {

struct SyncPair {
  GridCoord entering;
  GridCoord source;  // west neighbor, already inside the outgoing window

  friend bool operator==(const SyncPair&, const SyncPair&) = default;
};

struct HandoverPair {
  GridCoord old_leader;
  GridCoord new_leader;

  friend bool operator==(const HandoverPair&, const HandoverPair&) = default;
};

struct MigrationPlan {
  int64_t period = 0;  // period being entered
  std::vector<SyncPair> syncs;
  std::optional<HandoverPair> handover;
  std::vector<GridCoord> exiting;
};

/// Plan for the transition from period-1 into `period`. Requires period >= 1.
/// `current_leader` is the leader during period-1.
MigrationPlan plan_period_migration(int64_t period, const ServiceAreaSpec& spec,
                                    const TorusTopology& topo, int32_t leader_row_plane,
                                    const GridCoord& current_leader,
                                    const ResponsivePredicate& responsive = {});

/// Builds the reply to `req` from the source replica.
SyncPayload make_sync_payload(const Replica& source, const SyncRequest& req,
                              std::optional<GridCoord> known_leader);

/// Installs `payload`. Throws CorruptionError when the blocks do not extend
/// the requester's chain or the records do not line up.
std::vector<CommitOutcome> apply_sync_payload(Replica& requester, const SyncPayload& payload);

Document sync_payload_to_json(const SyncPayload& p);
/// Throws Error (kInvalidArgument) on a schema mismatch.
SyncPayload sync_payload_from_json(const Document& doc);

}  // namespace leochain
