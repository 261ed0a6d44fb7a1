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

// Per-node ledger replica: a hash-chained block log of ordered transactions
// and the versioned key-value state it produces.
//
// Consensus encoding. A transaction is encoded as compact JSON with object
// keys in lexicographic order and no floating point anywhere:
//
//   {"contract":"AccountContract","id":"tx-...","ops":[
//     {"key":"acct-...","op":"read","version":3},
//     {"key":"acct-...","op":"write","value":{"balance":8}}],
//    "seq":17,"submitter":[1,20]}
//
// A block hash is SHA-256 over
//   decimal(height) "\n" hex(prev_hash) "\n" canonical_encoding(tx)
// Height 0 is a genesis block with an all-zero prev_hash and an empty
// transaction whose id is "genesis".

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "leochain/digest.hpp"
#include "leochain/topology.hpp"

namespace leochain {

using Document = nlohmann::json;
using Version = int64_t;
using Seq = int64_t;
using Height = int64_t;
using TxId = std::string;

enum class OpKind : uint8_t { kRead, kWrite };

struct Operation {
  OpKind kind = OpKind::kRead;
  std::string key;
  Document value;                       // writes: full replacement value
  std::optional<Version> read_version;  // reads: version observed at execution

  static Operation read(std::string key, std::optional<Version> version = std::nullopt);
  static Operation write(std::string key, Document value);

  friend bool operator==(const Operation&, const Operation&) = default;
};

enum class TxStatus : uint8_t {
  kSubmitted,
  kExecuted,
  kOrdered,
  kCommitted,
  kRejected,
  kUnknown,
};

const char* to_string(TxStatus s);

struct Transaction {
  TxId id;
  std::string contract;  // empty for raw operation lists
  std::vector<Operation> ops;
  GridCoord submitter;
  std::optional<Seq> seq;
  TxStatus status = TxStatus::kSubmitted;
  std::string reason;  // set when rejected
};

/// Consensus-relevant fields only; throws Error on floating-point values.
Document canonical_json(const Transaction& tx);
std::string canonical_encoding(const Transaction& tx);
/// Inverse of canonical_json. Status is left as kOrdered when seq is present.
Transaction transaction_from_json(const Document& doc);

struct Block {
  Height height = 0;
  Digest prev_hash;
  Transaction tx;
  Digest hash;
};

Digest compute_block_hash(Height height, const Digest& prev_hash, const Transaction& tx);
Document block_to_json(const Block& b);
Block block_from_json(const Document& doc);

struct StateEntry {
  Document value;
  Version version = 0;
  Height last_block = 0;

  friend bool operator==(const StateEntry&, const StateEntry&) = default;
};

class StateStore {
 public:
  const StateEntry* find(const std::string& key) const;
  /// Replace value, bump version by one, and stamp the writing block.
  void apply_write(const std::string& key, Document value, Height height);
  /// Install an entry verbatim (state transfer).
  void install(const std::string& key, StateEntry entry);

  size_t size() const noexcept { return entries_.size(); }
  const std::map<std::string, StateEntry>& entries() const noexcept { return entries_; }
  /// Entries last written by a block above `height`.
  std::vector<std::pair<std::string, StateEntry>> entries_since(Height height) const;

  /// SHA-256 over sorted "key \t version \t canonical(value) \n" lines.
  Digest digest() const;

  friend bool operator==(const StateStore&, const StateStore&) = default;

 private:
  std::map<std::string, StateEntry> entries_;
};

Document state_to_json(const StateStore& state);
StateStore state_from_json(const Document& doc);

/// Private overlay used for local execution and for validation replay.
/// Reads observe earlier writes within the same overlay; each write bumps
/// the key's version by one relative to the overlay's view.
class ScratchState {
 public:
  explicit ScratchState(const StateStore& base) : base_(&base) {}

  struct View {
    Document value;
    Version version;
  };

  std::optional<View> lookup(const std::string& key) const;
  Version write(const std::string& key, Document value);
  const std::map<std::string, View>& overlay() const noexcept { return overlay_; }

 private:
  const StateStore* base_;
  std::map<std::string, View> overlay_;
};

/// Runs `ops` in order against `scratch`: a read with a recorded version
/// must match the current version, a read without one is filled in, and a
/// missing key fails. Returns the failure reason, or nullopt on success.
std::optional<std::string> replay_ops(std::vector<Operation>& ops, ScratchState& scratch);

/// Local execution of a raw operation list against a replica's state. Never
/// touches `state`. Returns the tx with read versions filled and status
/// kExecuted, or status kRejected with a reason.
Transaction execute_local(Transaction tx, const StateStore& state);

class Blockchain {
 public:
  Blockchain();

  Height height() const noexcept { return static_cast<Height>(blocks_.size()) - 1; }
  const Block& head() const { return blocks_.back(); }
  const Block& at(Height h) const;
  const std::vector<Block>& blocks() const noexcept { return blocks_; }

  const Block& append(Transaction tx);
  /// Appends blocks that must continue the current head; each block's hash
  /// is recomputed. Throws CorruptionError on any mismatch.
  /// All-or-nothing: throws CorruptionError and leaves the chain alone
  /// unless every block links.
  void extend(std::span<const Block> blocks);
  void check_extension(std::span<const Block> blocks) const;
  std::vector<Block> blocks_after(Height height) const;

  /// Recomputes every hash and every link. Throws CorruptionError.
  void verify() const;
  bool verifies() const noexcept;

  std::vector<Block>& mutable_blocks_for_testing() { return blocks_; }

 private:
  std::vector<Block> blocks_;
};

struct CommitOutcome {
  Seq seq = 0;
  TxId id;
  bool committed = false;
  Height height = 0;  // block height when committed
  std::string reason;
};

struct StatusReport {
  TxStatus status = TxStatus::kUnknown;
  std::optional<Seq> seq;
  std::optional<Height> height;
  std::string reason;
};

/// Outcome of a consumed sequence number, kept for status queries and for
/// state transfer.
struct SeqRecord {
  Seq seq = 0;
  TxId id;
  bool committed = false;
  std::string reason;

  friend bool operator==(const SeqRecord&, const SeqRecord&) = default;
};

class Replica {
 public:
  Replica() = default;

  const Blockchain& chain() const noexcept { return chain_; }
  Blockchain& mutable_chain_for_testing() noexcept { return chain_; }
  const StateStore& state() const noexcept { return state_; }
  Seq next_expected_seq() const noexcept { return next_expected_; }
  size_t buffered() const noexcept { return buffer_.size(); }

  /// Requires tx.seq == next_expected_seq(). Re-checks read versions; on
  /// success appends a block and applies writes. next_expected_seq advances
  /// either way.
  CommitOutcome validate_and_commit(const Transaction& tx);

  /// Accepts an ordered tx in any arrival order: below the expected seq it is
  /// an idempotent duplicate (or a fatal ProtocolViolation when it differs),
  /// above it is buffered, and at it the buffer drains. Returns the outcomes
  /// applied by this call in seq order.
  std::vector<CommitOutcome> accept_ordered(const Transaction& tx);

  /// Execution failure seen locally (never ordered).
  void record_local_rejection(const TxId& id, const std::string& reason);

  StatusReport query_status(const TxId& id) const;

  /// Outcomes for every consumed seq, in order.
  const std::vector<SeqRecord>& seq_log() const noexcept { return seq_log_; }
  /// (seq, tx_id) of committed transactions, in order.
  std::vector<std::pair<Seq, TxId>> committed_log() const;

  Digest state_digest() const { return state_.digest(); }

  /// State transfer: apply chain suffix, changed entries, and seq records.
  /// Buffered transactions that now follow the head are committed; their
  /// outcomes are returned.
  std::vector<CommitOutcome> install_sync(std::span<const Block> blocks,
                    const std::vector<std::pair<std::string, StateEntry>>& entries,
                    std::span<const SeqRecord> records, Seq next_expected);

 private:
  Blockchain chain_;
  StateStore state_;
  Seq next_expected_ = 1;
  std::map<Seq, Transaction> buffer_;
  std::vector<SeqRecord> seq_log_;  // index = seq - 1
  std::map<TxId, Seq> seq_by_id_;
  std::map<Seq, Digest> payload_digest_;  // seqs validated here
  std::map<TxId, std::string> local_rejections_;
};

struct QuorumReadResult {
  std::optional<StateEntry> entry;  // highest version seen
  size_t replicas_read = 0;
};

/// Reads `key` from each replica and returns the highest version. Two
/// different values at the same version raise InvariantViolation.
QuorumReadResult quorum_read(const std::string& key, std::span<const Replica* const> replicas);

}  // namespace leochain
