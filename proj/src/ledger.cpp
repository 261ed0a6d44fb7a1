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

#include "leochain/ledger.hpp"

#include "leochain/errors.hpp"

namespace leochain {

namespace {

void reject_floats(const Document& doc) {
  if (doc.is_number_float())
    throw Error(ErrorCode::kInvalidArgument, "floating-point value in consensus field");
  if (doc.is_structured())
    for (const auto& child : doc) reject_floats(child);
}

std::string dump_canonical(const Document& doc) {
  return doc.dump(-1, ' ', false, Document::error_handler_t::strict);
}

Document coord_json(const GridCoord& c) { return Document::array({c.plane, c.slot}); }

GridCoord coord_from_json(const Document& doc) {
  if (!doc.is_array() || doc.size() != 2)
    throw Error(ErrorCode::kInvalidArgument, "coordinate must be [plane, slot]");
  return {doc.at(0).get<int32_t>(), doc.at(1).get<int32_t>()};
}

Transaction genesis_tx() {
  Transaction tx;
  tx.id = "genesis";
  tx.seq = 0;
  tx.status = TxStatus::kCommitted;
  return tx;
}

}  // namespace

Operation Operation::read(std::string key, std::optional<Version> version) {
  Operation op;
  op.kind = OpKind::kRead;
  op.key = std::move(key);
  op.read_version = version;
  return op;
}

Operation Operation::write(std::string key, Document value) {
  Operation op;
  op.kind = OpKind::kWrite;
  op.key = std::move(key);
  op.value = std::move(value);
  return op;
}

const char* to_string(TxStatus s) {
  switch (s) {
    case TxStatus::kSubmitted: return "submitted";
    case TxStatus::kExecuted: return "executed";
    case TxStatus::kOrdered: return "ordered";
    case TxStatus::kCommitted: return "committed";
    case TxStatus::kRejected: return "rejected";
    case TxStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

Document canonical_json(const Transaction& tx) {
  Document ops = Document::array();
  for (const auto& op : tx.ops) {
    Document o;
    o["key"] = op.key;
    if (op.kind == OpKind::kRead) {
      o["op"] = "read";
      if (op.read_version) o["version"] = *op.read_version;
    } else {
      reject_floats(op.value);
      o["op"] = "write";
      o["value"] = op.value;
    }
    ops.push_back(std::move(o));
  }
  Document doc;
  doc["id"] = tx.id;
  doc["contract"] = tx.contract;
  doc["ops"] = std::move(ops);
  doc["submitter"] = coord_json(tx.submitter);
  if (tx.seq) doc["seq"] = *tx.seq;
  return doc;
}

std::string canonical_encoding(const Transaction& tx) { return dump_canonical(canonical_json(tx)); }

Transaction transaction_from_json(const Document& doc) {
  Transaction tx;
  tx.id = doc.at("id").get<std::string>();
  tx.contract = doc.value("contract", std::string{});
  tx.submitter = coord_from_json(doc.at("submitter"));
  if (doc.contains("seq")) {
    tx.seq = doc.at("seq").get<Seq>();
    tx.status = TxStatus::kOrdered;
  }
  for (const auto& o : doc.at("ops")) {
    const auto kind = o.at("op").get<std::string>();
    if (kind == "read") {
      std::optional<Version> v;
      if (o.contains("version")) v = o.at("version").get<Version>();
      tx.ops.push_back(Operation::read(o.at("key").get<std::string>(), v));
    } else if (kind == "write") {
      tx.ops.push_back(Operation::write(o.at("key").get<std::string>(), o.at("value")));
    } else {
      throw Error(ErrorCode::kInvalidArgument, "unknown op kind '" + kind + "'");
    }
  }
  return tx;
}

Digest compute_block_hash(Height height, const Digest& prev_hash, const Transaction& tx) {
  Sha256 h;
  h.update(std::to_string(height)).update("\n").update(prev_hash.hex()).update("\n");
  h.update(canonical_encoding(tx));
  return h.finish();
}

Document block_to_json(const Block& b) {
  Document doc;
  doc["height"] = b.height;
  doc["prev_hash"] = b.prev_hash.hex();
  doc["hash"] = b.hash.hex();
  doc["tx"] = canonical_json(b.tx);
  return doc;
}

Block block_from_json(const Document& doc) {
  Block b;
  b.height = doc.at("height").get<Height>();
  b.prev_hash = Digest::from_hex(doc.at("prev_hash").get<std::string>());
  b.hash = Digest::from_hex(doc.at("hash").get<std::string>());
  b.tx = transaction_from_json(doc.at("tx"));
  b.tx.status = TxStatus::kCommitted;
  return b;
}

// --- StateStore -------------------------------------------------------------

const StateEntry* StateStore::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

void StateStore::apply_write(const std::string& key, Document value, Height height) {
  auto& e = entries_[key];
  e.value = std::move(value);
  e.version += 1;
  e.last_block = height;
}

void StateStore::install(const std::string& key, StateEntry entry) {
  entries_[key] = std::move(entry);
}

std::vector<std::pair<std::string, StateEntry>> StateStore::entries_since(Height height) const {
  std::vector<std::pair<std::string, StateEntry>> out;
  for (const auto& [k, e] : entries_)
    if (e.last_block > height) out.emplace_back(k, e);
  return out;
}

Digest StateStore::digest() const {
  Sha256 h;
  for (const auto& [k, e] : entries_) {
    h.update(k).update("\t").update(std::to_string(e.version)).update("\t");
    h.update(dump_canonical(e.value)).update("\n");
  }
  return h.finish();
}

Document state_to_json(const StateStore& state) {
  Document entries = Document::array();
  for (const auto& [k, e] : state.entries()) {
    entries.push_back({{"key", k}, {"version", e.version}, {"last_block", e.last_block},
                       {"value", e.value}});
  }
  return {{"schema", "leochain.state/1"}, {"entries", std::move(entries)}};
}

StateStore state_from_json(const Document& doc) {
  if (doc.value("schema", std::string{}) != "leochain.state/1")
    throw Error(ErrorCode::kInvalidArgument, "unsupported state snapshot schema");
  StateStore s;
  for (const auto& e : doc.at("entries")) {
    s.install(e.at("key").get<std::string>(),
              StateEntry{e.at("value"), e.at("version").get<Version>(),
                         e.at("last_block").get<Height>()});
  }
  return s;
}

// --- Execution ----------------------------------------------------------------

std::optional<ScratchState::View> ScratchState::lookup(const std::string& key) const {
  if (auto it = overlay_.find(key); it != overlay_.end()) return it->second;
  if (const StateEntry* e = base_->find(key)) return View{e->value, e->version};
  return std::nullopt;
}

Version ScratchState::write(const std::string& key, Document value) {
  Version current = 0;
  if (auto v = lookup(key)) current = v->version;
  overlay_[key] = View{std::move(value), current + 1};
  return current + 1;
}

std::optional<std::string> replay_ops(std::vector<Operation>& ops, ScratchState& scratch) {
  for (auto& op : ops) {
    if (op.kind == OpKind::kRead) {
      auto v = scratch.lookup(op.key);
      if (!v) return "read of missing key '" + op.key + "'";
      if (!op.read_version) {
        op.read_version = v->version;
      } else if (*op.read_version != v->version) {
        return "version mismatch on '" + op.key + "': read " +
               std::to_string(*op.read_version) + ", current " + std::to_string(v->version);
      }
    } else {
      scratch.write(op.key, op.value);
    }
  }
  return std::nullopt;
}

Transaction execute_local(Transaction tx, const StateStore& state) {
  ScratchState scratch(state);
  if (auto failure = replay_ops(tx.ops, scratch)) {
    tx.status = TxStatus::kRejected;
    tx.reason = *failure;
  } else {
    tx.status = TxStatus::kExecuted;
  }
  return tx;
}

// --- Blockchain -------------------------------------------------------------

Blockchain::Blockchain() {
  Block g;
  g.height = 0;
  g.prev_hash = Digest::zero();
  g.tx = genesis_tx();
  g.hash = compute_block_hash(0, g.prev_hash, g.tx);
  blocks_.push_back(std::move(g));
}

const Block& Blockchain::at(Height h) const {
  if (h < 0 || h > height()) throw Error(ErrorCode::kNotFound, "no block at height " + std::to_string(h));
  return blocks_[static_cast<size_t>(h)];
}

const Block& Blockchain::append(Transaction tx) {
  Block b;
  b.height = height() + 1;
  b.prev_hash = head().hash;
  tx.status = TxStatus::kCommitted;
  b.tx = std::move(tx);
  b.hash = compute_block_hash(b.height, b.prev_hash, b.tx);
  blocks_.push_back(std::move(b));
  return blocks_.back();
}

void Blockchain::check_extension(std::span<const Block> blocks) const {
  Height h = height();
  Digest prev = head().hash;
  for (const Block& b : blocks) {
    if (b.height != h + 1)
      throw CorruptionError("block height " + std::to_string(b.height) + " does not follow head " +
                            std::to_string(h));
    if (b.prev_hash != prev)
      throw CorruptionError("block " + std::to_string(b.height) + " prev_hash does not link to head");
    if (compute_block_hash(b.height, b.prev_hash, b.tx) != b.hash)
      throw CorruptionError("block " + std::to_string(b.height) + " hash mismatch");
    h = b.height;
    prev = b.hash;
  }
}

void Blockchain::extend(std::span<const Block> blocks) {
  check_extension(blocks);
  blocks_.insert(blocks_.end(), blocks.begin(), blocks.end());
}

std::vector<Block> Blockchain::blocks_after(Height h) const {
  if (h < 0) h = 0;
  if (h >= height()) return {};
  return {blocks_.begin() + h + 1, blocks_.end()};
}

void Blockchain::verify() const {
  if (blocks_.empty()) throw CorruptionError("chain has no genesis");
  for (size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    if (b.height != static_cast<Height>(i))
      throw CorruptionError("height gap at index " + std::to_string(i));
    const Digest expected_prev = i == 0 ? Digest::zero() : blocks_[i - 1].hash;
    if (b.prev_hash != expected_prev)
      throw CorruptionError("broken link at height " + std::to_string(i));
    if (compute_block_hash(b.height, b.prev_hash, b.tx) != b.hash)
      throw CorruptionError("hash mismatch at height " + std::to_string(i));
  }
}

bool Blockchain::verifies() const noexcept {
  try {
    verify();
    return true;
  } catch (...) {
    return false;
  }
}

// --- Replica ------------------------------------------------------------------

CommitOutcome Replica::validate_and_commit(const Transaction& tx) {
  if (!tx.seq || *tx.seq != next_expected_)
    throw ProtocolViolation("validate_and_commit expects seq " + std::to_string(next_expected_));
  CommitOutcome out;
  out.seq = *tx.seq;
  out.id = tx.id;

  std::vector<Operation> ops = tx.ops;
  ScratchState scratch(state_);
  if (auto failure = replay_ops(ops, scratch)) {
    out.reason = *failure;
  } else {
    Transaction committed = tx;
    committed.ops = std::move(ops);
    const Block& b = chain_.append(std::move(committed));
    for (const auto& [key, view] : scratch.overlay()) {
      // Each write op bumps the version once; the overlay already counted them.
      const StateEntry* cur = state_.find(key);
      const Version base = cur ? cur->version : 0;
      StateEntry e{view.value, view.version, b.height};
      if (view.version <= base) throw CorruptionError("non-monotone version on '" + key + "'");
      state_.install(key, std::move(e));
    }
    out.committed = true;
    out.height = b.height;
  }
  seq_log_.push_back(SeqRecord{out.seq, out.id, out.committed, out.reason});
  seq_by_id_[out.id] = out.seq;
  payload_digest_[out.seq] = Sha256::of(canonical_encoding(tx));
  ++next_expected_;
  return out;
}

std::vector<CommitOutcome> Replica::accept_ordered(const Transaction& tx) {
  if (!tx.seq || *tx.seq < 1) throw ProtocolViolation("ordered transaction without seq");
  const Seq seq = *tx.seq;
  std::vector<CommitOutcome> applied;
  if (seq < next_expected_) {
    const SeqRecord& rec = seq_log_.at(static_cast<size_t>(seq - 1));
    if (rec.id != tx.id)
      throw ProtocolViolation("seq " + std::to_string(seq) + " already consumed by " + rec.id +
                              ", got " + tx.id);
    // Records installed by a sync carry no payload to compare against.
    if (auto it = payload_digest_.find(seq);
        it != payload_digest_.end() && it->second != Sha256::of(canonical_encoding(tx)))
      throw ProtocolViolation("conflicting payloads for consumed seq " + std::to_string(seq));
    return applied;
  }
  if (seq > next_expected_) {
    auto [it, inserted] = buffer_.emplace(seq, tx);
    if (!inserted && canonical_encoding(it->second) != canonical_encoding(tx))
      throw ProtocolViolation("conflicting payloads for buffered seq " + std::to_string(seq));
    return applied;
  }
  applied.push_back(validate_and_commit(tx));
  for (auto it = buffer_.find(next_expected_); it != buffer_.end();
       it = buffer_.find(next_expected_)) {
    Transaction next = std::move(it->second);
    buffer_.erase(it);
    applied.push_back(validate_and_commit(next));
  }
  return applied;
}

void Replica::record_local_rejection(const TxId& id, const std::string& reason) {
  local_rejections_[id] = reason;
}

StatusReport Replica::query_status(const TxId& id) const {
  StatusReport r;
  if (auto it = seq_by_id_.find(id); it != seq_by_id_.end()) {
    const SeqRecord& rec = seq_log_.at(static_cast<size_t>(it->second - 1));
    r.seq = rec.seq;
    if (rec.committed) {
      r.status = TxStatus::kCommitted;
      for (Height h = chain_.height(); h > 0; --h) {
        if (chain_.at(h).tx.id == id) {
          r.height = h;
          break;
        }
      }
    } else {
      r.status = TxStatus::kRejected;
      r.reason = rec.reason;
    }
    return r;
  }
  for (const auto& [seq, buffered] : buffer_) {
    if (buffered.id == id) {
      r.status = TxStatus::kOrdered;
      r.seq = seq;
      return r;
    }
  }
  if (auto it = local_rejections_.find(id); it != local_rejections_.end()) {
    r.status = TxStatus::kRejected;
    r.reason = it->second;
  }
  return r;
}

std::vector<std::pair<Seq, TxId>> Replica::committed_log() const {
  std::vector<std::pair<Seq, TxId>> out;
  for (const auto& rec : seq_log_)
    if (rec.committed) out.emplace_back(rec.seq, rec.id);
  return out;
}

std::vector<CommitOutcome> Replica::install_sync(std::span<const Block> blocks,
                           const std::vector<std::pair<std::string, StateEntry>>& entries,
                           std::span<const SeqRecord> records, Seq next_expected) {
  // Check everything before touching the replica, so a bad payload leaves it as it was.
  chain_.check_extension(blocks);
  Seq expect = next_expected_;
  for (const SeqRecord& rec : records) {
    if (rec.seq != expect)
      throw CorruptionError("sync seq record " + std::to_string(rec.seq) + " does not follow " +
                            std::to_string(expect));
    ++expect;
  }
  if (expect != next_expected)
    throw CorruptionError("sync left next_expected_seq at " + std::to_string(expect) + ", source at " +
                          std::to_string(next_expected));
  chain_.extend(blocks);
  for (const auto& [k, e] : entries) state_.install(k, e);
  for (const SeqRecord& rec : records) {
    seq_log_.push_back(rec);
    seq_by_id_[rec.id] = rec.seq;
  }
  next_expected_ = expect;
  // Buffered txs below the new expected seq are now covered by the transfer.
  buffer_.erase(buffer_.begin(), buffer_.lower_bound(next_expected_));
  std::vector<CommitOutcome> applied;
  for (auto it = buffer_.find(next_expected_); it != buffer_.end();
       it = buffer_.find(next_expected_)) {
    Transaction next = std::move(it->second);
    buffer_.erase(it);
    applied.push_back(validate_and_commit(next));
  }
  return applied;
}

QuorumReadResult quorum_read(const std::string& key, std::span<const Replica* const> replicas) {
  QuorumReadResult out;
  for (const Replica* r : replicas) {
    ++out.replicas_read;
    const StateEntry* e = r->state().find(key);
    if (!e) continue;
    if (!out.entry || e->version > out.entry->version) {
      out.entry = *e;
    } else if (e->version == out.entry->version && e->value != out.entry->value) {
      throw InvariantViolation("consistency violation: divergent values for '" + key +
                               "' at version " + std::to_string(e->version));
    }
  }
  return out;
}

}  // namespace leochain
