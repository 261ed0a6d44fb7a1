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

#include "leochain/migration.hpp"

#include <algorithm>

#include "leochain/errors.hpp"

namespace leochain {

MigrationPlan plan_period_migration(int64_t period, const ServiceAreaSpec& spec,
                                    const TorusTopology& topo, int32_t leader_row_plane,
                                    const GridCoord& current_leader,
                                    const ResponsivePredicate& responsive) {
  const MembershipDelta delta = membership_delta(period, spec, topo);
  MigrationPlan plan;
  plan.period = period;
  plan.exiting = delta.exiting;
  for (const GridCoord& e : delta.entering)
    plan.syncs.push_back(SyncPair{e, topo.neighbor(e, Direction::kWest)});
  if (std::find(delta.exiting.begin(), delta.exiting.end(), current_leader) !=
      delta.exiting.end()) {
    const ServiceAreaWindow next = service_area_at(period, spec, topo);
    plan.handover = HandoverPair{current_leader, elect_leader(next, leader_row_plane, responsive)};
  }
  return plan;
}

SyncPayload make_sync_payload(const Replica& source, const SyncRequest& req,
                              std::optional<GridCoord> known_leader) {
  if (req.last_height > source.chain().height())
    throw ProtocolViolation("sync requester is ahead of its source (height " +
                            std::to_string(req.last_height) + " > " +
                            std::to_string(source.chain().height()) + ")");
  SyncPayload p;
  p.blocks = source.chain().blocks_after(req.last_height);
  p.state = source.state().entries_since(req.last_height);
  const auto& log = source.seq_log();
  for (size_t i = static_cast<size_t>(std::max<Seq>(req.next_expected_seq - 1, 0)); i < log.size();
       ++i)
    p.records.push_back(log[i]);
  p.next_expected_seq = source.next_expected_seq();
  p.last_height = source.chain().height();
  p.known_leader = known_leader;
  return p;
}

std::vector<CommitOutcome> apply_sync_payload(Replica& requester, const SyncPayload& payload) {
  return requester.install_sync(payload.blocks, payload.state, payload.records,
                                payload.next_expected_seq);
}

namespace {

Document coord_json(const GridCoord& c) { return Document::array({c.plane, c.slot}); }

}  // namespace

Document sync_payload_to_json(const SyncPayload& p) {
  Document blocks = Document::array();
  for (const Block& b : p.blocks) blocks.push_back(block_to_json(b));
  Document state = Document::array();
  for (const auto& [k, e] : p.state)
    state.push_back({{"key", k}, {"value", e.value}, {"version", e.version},
                     {"last_block", e.last_block}});
  Document records = Document::array();
  for (const SeqRecord& r : p.records)
    records.push_back({{"seq", r.seq}, {"id", r.id}, {"committed", r.committed},
                       {"reason", r.reason}});
  return {{"schema", "leochain.sync/1"},
          {"last_height", p.last_height},
          {"next_expected_seq", p.next_expected_seq},
          {"known_leader", p.known_leader ? coord_json(*p.known_leader) : Document()},
          {"blocks", std::move(blocks)},
          {"state", std::move(state)},
          {"records", std::move(records)}};
}

SyncPayload sync_payload_from_json(const Document& doc) {
  if (!doc.is_object() || doc.value("schema", std::string{}) != "leochain.sync/1")
    throw Error(ErrorCode::kInvalidArgument, "unsupported sync payload schema");
  SyncPayload p;
  try {
    p.last_height = doc.at("last_height").get<Height>();
    p.next_expected_seq = doc.at("next_expected_seq").get<Seq>();
    if (const auto& l = doc.at("known_leader"); !l.is_null())
      p.known_leader = GridCoord{l.at(0).get<int32_t>(), l.at(1).get<int32_t>()};
    for (const auto& b : doc.at("blocks")) p.blocks.push_back(block_from_json(b));
    for (const auto& e : doc.at("state"))
      p.state.emplace_back(e.at("key").get<std::string>(),
                           StateEntry{e.at("value"), e.at("version").get<Version>(),
                                      e.at("last_block").get<Height>()});
    for (const auto& r : doc.at("records"))
      p.records.push_back(SeqRecord{r.at("seq").get<Seq>(), r.at("id").get<TxId>(),
                                    r.at("committed").get<bool>(),
                                    r.at("reason").get<std::string>()});
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed sync payload: ") + e.what());
  }
  return p;
}

}  // namespace leochain
