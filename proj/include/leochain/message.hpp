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

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "leochain/contracts.hpp"
#include "leochain/ledger.hpp"
#include "leochain/topology.hpp"

namespace leochain {

/// Accounting categories. Every hop of every message is one count.
enum class MessageKind : uint8_t {
  kGossip = 0,
  kRouteExecute,
  kExecuteTransactions,
  kOrderTransaction,
  kSyncBlocks,
  kSyncState,
  kLeaderHandover,
  kClientQuery,
};

inline constexpr size_t kMessageKindCount = 8;
inline constexpr std::array<MessageKind, kMessageKindCount> kAllMessageKinds = {
    MessageKind::kGossip,           MessageKind::kRouteExecute,
    MessageKind::kExecuteTransactions, MessageKind::kOrderTransaction,
    MessageKind::kSyncBlocks,       MessageKind::kSyncState,
    MessageKind::kLeaderHandover,   MessageKind::kClientQuery,
};

const char* to_string(MessageKind k);
std::optional<MessageKind> parse_message_kind(std::string_view name);
constexpr size_t kind_index(MessageKind k) { return static_cast<size_t>(k); }

using MessageId = uint64_t;

// --- payloads -------------------------------------------------------------------

struct OrderedBatch {
  std::vector<Transaction> txs;  // consecutive seqs
};

struct LeaderAnnouncement {
  GridCoord leader;
};

struct GossipBody {
  std::variant<OrderedBatch, LeaderAnnouncement> body;
};

/// A client transaction before execution: either a contract invocation or a
/// raw operation list.
struct Submission {
  TxId id;
  std::optional<ContractInvocation> invocation;
  std::vector<Operation> ops;
  GridCoord submitter;
};

struct OrderRequest {
  Transaction tx;
};

struct HandoverRequest {
  Seq next_seq = 1;
  GridCoord from;
};

/// Externally-triggered sync: "sync from me, you are about to enter".
struct SyncTrigger {};

/// Entering node -> west neighbor.
struct SyncRequest {
  Height last_height = 0;
  Seq next_expected_seq = 1;
};

/// West neighbor -> entering node: everything appended after the
/// requester's last known height.
struct SyncPayload {
  static constexpr int kSchemaVersion = 1;
  std::vector<Block> blocks;
  std::vector<std::pair<std::string, StateEntry>> state;  // entries changed since last_height
  std::vector<SeqRecord> records;                         // seqs consumed since request
  Seq next_expected_seq = 1;
  Height last_height = 0;  // source head height
  std::optional<GridCoord> known_leader;
};

using Payload = std::variant<std::monostate, GossipBody, Submission, OrderRequest,
                             HandoverRequest, SyncTrigger, SyncRequest, SyncPayload>;

struct Message {
  MessageId id = 0;
  MessageKind kind = MessageKind::kGossip;
  GridCoord src;     // sender of this hop
  GridCoord dst;     // receiver of this hop; always a neighbor of src
  GridCoord origin;  // original sender
  GridCoord target;  // final destination for routed messages
  Direction arrival = Direction::kNorth;  // side of dst the message enters from
  std::optional<int32_t> hop_budget;
  std::shared_ptr<const Payload> payload;

  template <typename T>
  const T& as() const {
    return std::get<T>(*payload);
  }
  template <typename T>
  bool holds() const {
    return payload && std::holds_alternative<T>(*payload);
  }
};

template <typename T>
std::shared_ptr<const Payload> make_payload(T&& value) {
  return std::make_shared<const Payload>(std::forward<T>(value));
}

}  // namespace leochain
