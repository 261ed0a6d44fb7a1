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

#include "leochain/simulation.hpp"

#include <algorithm>
#include <cstdio>

#include "leochain/errors.hpp"

namespace leochain {

const char* to_string(SyncTriggerMode m) {
  return m == SyncTriggerMode::kSelf ? "self" : "external";
}

const char* to_string(NodeRole r) {
  switch (r) {
    case NodeRole::kOutside: return "outside";
    case NodeRole::kServiceArea: return "sa";
    case NodeRole::kLeaderRow: return "leader_row";
    case NodeRole::kLeader: return "leader";
  }
  return "?";
}

void SimulationOptions::validate() const {
  std::vector<std::string> problems;
  if (planes < 1) problems.push_back("grid.planes must be >= 1");
  if (slots_per_plane < 3) problems.push_back("grid.slots_per_plane must be >= 3");
  if (problems.empty()) {
    const TorusTopology topo(planes, slots_per_plane);
    try {
      sa.validate(topo);
    } catch (const ConfigError& e) {
      problems.insert(problems.end(), e.problems().begin(), e.problems().end());
    }
    if (leader_row_plane < sa.plane_first || leader_row_plane > sa.plane_last)
      problems.push_back("leader_row_plane " + std::to_string(leader_row_plane) +
                         " is not one of the service area's planes");
    for (const GridCoord& c : unresponsive)
      if (!topo.contains(c)) problems.push_back("unresponsive node " + to_string(c) + " outside grid");
  }
  if (batch_size < 1) problems.push_back("batch_size must be >= 1");
  if (!(network.drop_probability >= 0.0 && network.drop_probability <= 1.0))
    problems.push_back("drop_probability must be within [0, 1]");
  if (network.link_delay < 1) problems.push_back("link_delay must be >= 1");
  if (network.max_ticks < 1) problems.push_back("max_ticks must be >= 1");
  if (!problems.empty()) throw ConfigError(std::move(problems));
}

TxId IdGenerator::next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  z ^= z >> 31;
  char buf[24];
  std::snprintf(buf, sizeof buf, "tx-%016llx", static_cast<unsigned long long>(z));
  return buf;
}

struct Simulation::Node {
  GridCoord coord;
  Replica replica;
  GossipState gossip;
  std::optional<GridCoord> known_leader;
  std::optional<Sequencer> sequencer;
  std::vector<Transaction> held;  // order requests waiting for a leader
  bool migrating = false;         // migration sync outstanding
  bool needs_sync = false;        // catch-up: sync from the first gossip sender
  bool sync_pending = false;
  bool taking_over = false;       // incoming leader, handover in flight
  // Entering neighbors this node served during the current transition, and
  // the state each was last brought to. They cannot hear gossip until the
  // border advances, so anything committed meanwhile is pushed to them.
  std::map<GridCoord, SyncRequest> sync_followers;
};

namespace {

constexpr int kHandoverRetries = 16;

SimulationOptions checked(SimulationOptions o) {
  o.validate();
  o.network.seed = o.seed * 0x9e3779b97f4a7c15ULL + 0x5851f42d4c957f2dULL;
  return o;
}

}  // namespace

Simulation::Simulation(SimulationOptions options)
    : options_(checked(std::move(options))),
      topo_(options_.planes, options_.slots_per_plane),
      window_(service_area_at(0, options_.sa, topo_)),
      metrics_(topo_),
      net_(std::make_unique<Network>(topo_, options_.network, &metrics_)),
      registry_(ContractRegistry::with_defaults(options_.strict_accounts)),
      ids_(options_.seed),
      rng_(options_.seed),
      unresponsive_(options_.unresponsive.begin(), options_.unresponsive.end()) {
  nodes_.reserve(topo_.node_count());
  for (size_t i = 0; i < topo_.node_count(); ++i) {
    nodes_.push_back(std::make_unique<Node>());
    nodes_.back()->coord = topo_.coord(i);
  }
  net_->set_handler([this](const Message& m) { handle(m); });
  net_->set_delivery_filter([this](const Message& m) { return responsive(m.dst); });

  // The first leader is part of the deployment configuration, so members
  // know it without an announcement.
  const GridCoord first =
      elect_leader(window_, options_.leader_row_plane, responsive_predicate());
  node(first).sequencer.emplace(
      LeaderState{options_.leader_row_plane, first, 1, options_.batch_size});
  for (const GridCoord& c : window_.members()) node(c).known_leader = first;
}

Simulation::~Simulation() = default;

Simulation::Node& Simulation::node(const GridCoord& c) { return *nodes_[topo_.index(c)]; }
const Simulation::Node& Simulation::node(const GridCoord& c) const {
  return *nodes_[topo_.index(c)];
}

bool Simulation::responsive(const GridCoord& c) const { return unresponsive_.count(c) == 0; }

ResponsivePredicate Simulation::responsive_predicate() const {
  return [this](const GridCoord& c) { return responsive(c); };
}

std::optional<GridCoord> Simulation::leader() const {
  for (const auto& n : nodes_)
    if (n->sequencer) return n->coord;
  return std::nullopt;
}

size_t Simulation::leader_count() const {
  return static_cast<size_t>(
      std::count_if(nodes_.begin(), nodes_.end(), [](const auto& n) { return n->sequencer.has_value(); }));
}

const Replica& Simulation::replica(const GridCoord& c) const {
  topo_.check(c);
  return node(c).replica;
}

std::vector<const Replica*> Simulation::member_replicas() const {
  std::vector<const Replica*> out;
  for (const GridCoord& c : window_.members())
    if (responsive(c)) out.push_back(&node(c).replica);
  return out;
}

// --- transport helpers ------------------------------------------------------------

void Simulation::send_hop(MessageKind kind, const GridCoord& from, const GridCoord& to,
                          const GridCoord& origin, const GridCoord& target,
                          std::shared_ptr<const Payload> payload, MessageId id, Tick extra_delay) {
  Message m;
  m.id = id ? id : net_->next_message_id();
  m.kind = kind;
  m.src = from;
  m.dst = to;
  m.origin = origin;
  m.target = target;
  m.payload = std::move(payload);
  net_->send(std::move(m), extra_delay);
}

void Simulation::route(MessageKind kind, const GridCoord& from, const GridCoord& target,
                       const GridCoord& origin, std::shared_ptr<const Payload> payload) {
  const GridCoord next = topo_.neighbor(from, next_hop(topo_, from, target));
  send_hop(kind, from, next, origin, target, std::move(payload));
}

void Simulation::handle(const Message& m) {
  if (m.holds<Submission>()) return on_submission(m);
  if (m.holds<OrderRequest>()) return on_order_request(m);
  if (m.holds<GossipBody>()) return on_gossip(m);
  if (m.holds<HandoverRequest>()) return on_handover(m);
  if (m.holds<SyncTrigger>()) return on_sync_trigger(m);
  if (m.holds<SyncRequest>()) return on_sync_request(m);
  if (m.holds<SyncPayload>()) return on_sync_payload(m);
  throw ProtocolViolation(std::string("message without a payload: ") + to_string(m.kind));
}

// --- submission and execution ----------------------------------------------------

TxId Simulation::submit(const ContractInvocation& inv, const GridCoord& submitter) {
  topo_.check(submitter);
  registry_.bind_arguments(inv);
  Submission s;
  s.id = ids_.next();
  s.invocation = inv;
  s.submitter = submitter;
  submitted_[s.id] = ClientRecord{};
  const TxId id = s.id;
  if (window_.contains(submitter)) {
    execute_at(node(submitter), s);
  } else {
    const GridCoord entry = nearest_member(topo_, window_, submitter);
    const GridCoord next = topo_.neighbor(submitter, next_hop(topo_, submitter, entry));
    send_hop(next == entry ? MessageKind::kExecuteTransactions : MessageKind::kRouteExecute,
             submitter, next, submitter, entry, make_payload(std::move(s)));
  }
  return id;
}

TxId Simulation::submit_ops(std::vector<Operation> ops, const GridCoord& submitter) {
  topo_.check(submitter);
  Submission s;
  s.id = ids_.next();
  s.ops = std::move(ops);
  s.submitter = submitter;
  submitted_[s.id] = ClientRecord{};
  const TxId id = s.id;
  if (window_.contains(submitter)) {
    execute_at(node(submitter), s);
  } else {
    const GridCoord entry = nearest_member(topo_, window_, submitter);
    const GridCoord next = topo_.neighbor(submitter, next_hop(topo_, submitter, entry));
    send_hop(next == entry ? MessageKind::kExecuteTransactions : MessageKind::kRouteExecute,
             submitter, next, submitter, entry, make_payload(std::move(s)));
  }
  return id;
}

void Simulation::on_submission(const Message& m) {
  Node& n = node(m.dst);
  if (window_.contains(n.coord)) {
    execute_at(n, m.as<Submission>());
    return;
  }
  // Not a member (possibly one that just left): push it on toward the area.
  GridCoord entry = m.target;
  if (!window_.contains(entry) || n.coord == entry) entry = nearest_member(topo_, window_, n.coord);
  const GridCoord next = topo_.neighbor(n.coord, next_hop(topo_, n.coord, entry));
  send_hop(next == entry ? MessageKind::kExecuteTransactions : MessageKind::kRouteExecute,
           n.coord, next, m.origin, entry, m.payload);
}

void Simulation::execute_at(Node& n, const Submission& s) {
  Transaction tx;
  if (s.invocation) {
    tx = execute_invocation(registry_, *s.invocation, n.replica.state(), s.id, s.submitter);
  } else {
    tx.id = s.id;
    tx.ops = s.ops;
    tx.submitter = s.submitter;
    tx = execute_local(std::move(tx), n.replica.state());
  }
  if (tx.status == TxStatus::kRejected) {
    n.replica.record_local_rejection(tx.id, tx.reason);
    submitted_[tx.id] = ClientRecord{TxStatus::kRejected, tx.reason};
    if (first_commit_seen_.insert(tx.id).second && commit_observer_)
      commit_observer_(CommitEvent{tx.id, 0, 0, false, tx.reason});
    return;
  }
  submitted_[tx.id].status = TxStatus::kExecuted;
  forward_order(n, std::move(tx));
}

// --- ordering -----------------------------------------------------------------------

void Simulation::forward_order(Node& n, Transaction tx) {
  if (n.sequencer) {
    sequence(n, std::move(tx));
  } else if (n.taking_over) {
    n.held.push_back(std::move(tx));
  } else if (n.known_leader && *n.known_leader != n.coord) {
    route(MessageKind::kOrderTransaction, n.coord, *n.known_leader, n.coord,
          make_payload(OrderRequest{std::move(tx)}));
  } else {
    n.held.push_back(std::move(tx));
  }
}

void Simulation::on_order_request(const Message& m) {
  Node& n = node(m.dst);
  if (n.coord == m.target) {
    forward_order(n, m.as<OrderRequest>().tx);
    return;
  }
  route(MessageKind::kOrderTransaction, n.coord, m.target, m.origin, m.payload);
}

void Simulation::sequence(Node& leader, Transaction tx) {
  if (auto batch = leader.sequencer->enqueue(std::move(tx))) {
    for (const Transaction& t : *batch)
      if (auto it = submitted_.find(t.id); it != submitted_.end()) it->second.status = TxStatus::kOrdered;
    broadcast(leader, GossipBody{OrderedBatch{std::move(*batch)}});
  }
}

// --- gossip ---------------------------------------------------------------------------

void Simulation::broadcast(Node& from, GossipBody body) {
  const MessageId id = net_->next_message_id();
  from.gossip.mark(id, period());
  const auto payload = make_payload(std::move(body));
  const GossipBody& b = std::get<GossipBody>(*payload);
  if (const auto* batch = std::get_if<OrderedBatch>(&b.body)) deliver_batch(from, *batch);
  if (const auto* ann = std::get_if<LeaderAnnouncement>(&b.body)) learn_leader(from, ann->leader);
  for (Direction d : forward_directions(topo_, window_, from.coord, std::nullopt)) {
    const GridCoord to = topo_.neighbor(from.coord, d);
    send_hop(MessageKind::kGossip, from.coord, to, from.coord, to, payload, id,
             forward_delay(options_.gossip_policy, d));
  }
}

void Simulation::on_gossip(const Message& m) {
  Node& n = node(m.dst);
  if (!window_.contains(n.coord)) return;
  if (!n.gossip.mark(m.id, period())) return;
  const GossipBody& b = m.as<GossipBody>();
  if (const auto* batch = std::get_if<OrderedBatch>(&b.body)) deliver_batch(n, *batch);
  if (const auto* ann = std::get_if<LeaderAnnouncement>(&b.body)) learn_leader(n, ann->leader);
  // A replica that is behind (catch-up mode, or a missed broadcast on a
  // lossy link) syncs from whoever just forwarded to it: one hop away and
  // at least as current.
  if ((n.needs_sync || n.replica.buffered() > 0) && !n.sync_pending) request_sync(n, m.src);
  for (Direction d : forward_directions(topo_, window_, n.coord, m.arrival)) {
    const GridCoord to = topo_.neighbor(n.coord, d);
    send_hop(MessageKind::kGossip, n.coord, to, m.origin, to, m.payload, m.id,
             forward_delay(options_.gossip_policy, d));
  }
}

void Simulation::deliver_batch(Node& n, const OrderedBatch& batch) {
  for (const Transaction& tx : batch.txs) note_outcomes(n.replica.accept_ordered(tx));
  push_to_followers(n);
}

void Simulation::push_to_followers(Node& source) {
  const SyncRequest now{source.replica.chain().height(), source.replica.next_expected_seq()};
  for (auto& [to, at] : source.sync_followers) {
    if (at.next_expected_seq >= now.next_expected_seq) continue;
    send_hop(MessageKind::kSyncState, source.coord, to, source.coord, to,
             make_payload(make_sync_payload(source.replica, at, source.known_leader)));
    at = now;
  }
}

void Simulation::note_outcomes(const std::vector<CommitOutcome>& outcomes) {
  for (const CommitOutcome& o : outcomes) {
    if (o.committed) metrics_.record_commit();
    if (!first_commit_seen_.insert(o.id).second) continue;
    if (auto it = submitted_.find(o.id); it != submitted_.end())
      it->second = ClientRecord{o.committed ? TxStatus::kCommitted : TxStatus::kRejected, o.reason};
    if (commit_observer_) commit_observer_(CommitEvent{o.id, o.seq, o.height, o.committed, o.reason});
  }
}

void Simulation::learn_leader(Node& n, const GridCoord& leader) {
  n.known_leader = leader;
  std::vector<Transaction> held = std::move(n.held);
  n.held.clear();
  for (Transaction& tx : held) forward_order(n, std::move(tx));
}

// --- handover ---------------------------------------------------------------------------

void Simulation::on_handover(const Message& m) {
  Node& n = node(m.dst);
  if (n.coord != m.target) {
    route(MessageKind::kLeaderHandover, n.coord, m.target, m.origin, m.payload);
    return;
  }
  const HandoverRequest& h = m.as<HandoverRequest>();
  n.taking_over = false;
  n.sequencer.emplace(LeaderState{options_.leader_row_plane, n.coord, h.next_seq, options_.batch_size});
  learn_leader(n, n.coord);
}

// --- sync ---------------------------------------------------------------------------------

void Simulation::request_sync(Node& n, const GridCoord& source) {
  n.sync_pending = true;
  send_hop(MessageKind::kSyncBlocks, n.coord, source, n.coord, source,
           make_payload(SyncRequest{n.replica.chain().height(), n.replica.next_expected_seq()}));
}

void Simulation::on_sync_trigger(const Message& m) {
  Node& n = node(m.dst);
  request_sync(n, m.src);
}

void Simulation::on_sync_request(const Message& m) {
  Node& source = node(m.dst);
  const SyncRequest& req = m.as<SyncRequest>();
  const bool entering = node(m.src).migrating;
  // A source that is not ahead has nothing to offer; the requester stays
  // in catch-up mode and tries again on the next gossip, or, if it is
  // entering the area, gets whatever this node commits before the border
  // moves.
  if (source.replica.next_expected_seq() < req.next_expected_seq ||
      source.replica.chain().height() < req.last_height) {
    if (entering) source.sync_followers[m.src] = req;
    return;
  }
  if (entering)
    source.sync_followers[m.src] = SyncRequest{source.replica.chain().height(), source.replica.next_expected_seq()};
  send_hop(MessageKind::kSyncState, source.coord, m.src, source.coord, m.src,
           make_payload(make_sync_payload(source.replica, req, source.known_leader)));
}

void Simulation::on_sync_payload(const Message& m) {
  Node& n = node(m.dst);
  const SyncPayload& p = m.as<SyncPayload>();
  n.sync_pending = false;
  if (p.next_expected_seq < n.replica.next_expected_seq()) return;  // overtaken by gossip
  if (p.next_expected_seq == n.replica.next_expected_seq() && n.replica.chain().height() == p.last_height) {
    // Nothing new, but the exchange still counts as a completed sync.
  } else {
    SyncRequest current{n.replica.chain().height(), n.replica.next_expected_seq()};
    // The payload was cut for the state at request time; anything applied
    // since then by gossip is skipped.
    SyncPayload trimmed = p;
    const Height h = current.last_height;
    trimmed.blocks.erase(
        std::remove_if(trimmed.blocks.begin(), trimmed.blocks.end(),
                       [h](const Block& b) { return b.height <= h; }),
        trimmed.blocks.end());
    trimmed.records.erase(std::remove_if(trimmed.records.begin(), trimmed.records.end(),
                                         [&](const SeqRecord& r) { return r.seq < current.next_expected_seq; }),
                          trimmed.records.end());
    trimmed.state.erase(std::remove_if(trimmed.state.begin(), trimmed.state.end(),
                                       [&](const auto& kv) {
                                         const StateEntry* e = n.replica.state().find(kv.first);
                                         return e && e->version >= kv.second.version;
                                       }),
                        trimmed.state.end());
    note_outcomes(apply_sync_payload(n.replica, trimmed));
  }
  if (p.known_leader && !n.sequencer) learn_leader(n, *p.known_leader);
  n.needs_sync = false;
  if (n.migrating) {
    n.migrating = false;
    metrics_.record_migration();
  }
}

// --- period loop -----------------------------------------------------------------------------

void Simulation::settle() {
  for (;;) {
    net_->run_until_quiescent();
    bool flushed = false;
    for (auto& n : nodes_) {
      if (!n->sequencer || n->sequencer->waiting() == 0) continue;
      std::vector<Transaction> batch = n->sequencer->flush();
      for (const Transaction& t : batch)
        if (auto it = submitted_.find(t.id); it != submitted_.end()) it->second.status = TxStatus::kOrdered;
      broadcast(*n, GossipBody{OrderedBatch{std::move(batch)}});
      flushed = true;
    }
    if (!flushed) break;
  }
  for (auto& n : nodes_) n->sync_pending = false;
}

MigrationPlan Simulation::advance_period() {
  settle();
  const int64_t next = period() + 1;
  const std::optional<GridCoord> current = leader();
  if (!current) throw InvariantViolation("no leader at the end of period " + std::to_string(period()));
  MigrationPlan plan = plan_period_migration(next, options_.sa, topo_, options_.leader_row_plane,
                                             *current, responsive_predicate());

  // Entering nodes sync from their west neighbors. The pairs are disjoint,
  // so they run concurrently.
  for (const SyncPair& p : plan.syncs) {
    Node& entering = node(p.entering);
    entering.migrating = true;
    if (options_.sync_trigger == SyncTriggerMode::kExternal) {
      send_hop(MessageKind::kSyncBlocks, p.source, p.entering, p.source, p.entering,
               make_payload(SyncTrigger{}));
    } else {
      request_sync(entering, p.source);
    }
  }
  if (transition_hook_) transition_hook_(TransitionPoint::kSyncsStarted);
  settle();
  for (const SyncPair& p : plan.syncs) {
    Node& entering = node(p.entering);
    if (entering.migrating) {
      entering.migrating = false;
      entering.needs_sync = true;
    }
  }

  if (plan.handover) {
    Node& old = node(plan.handover->old_leader);
    const Seq next_seq = old.sequencer->state().next_seq;
    old.sequencer.reset();
    old.known_leader = plan.handover->new_leader;
    // The successor knows from its own orbit that the role is coming, so
    // it holds order requests that beat the handover message.
    node(plan.handover->new_leader).taking_over = true;
    route(MessageKind::kLeaderHandover, old.coord, plan.handover->new_leader, old.coord,
          make_payload(HandoverRequest{next_seq, old.coord}));
    if (transition_hook_) transition_hook_(TransitionPoint::kHandoverStarted);
    settle();
    // On lossy links the request can vanish; the outgoing leader resends
    // until the successor has taken over. Completion is observed directly
    // rather than through a counted acknowledgement.
    for (int attempt = 0; attempt < kHandoverRetries && !node(plan.handover->new_leader).sequencer; ++attempt) {
      route(MessageKind::kLeaderHandover, old.coord, plan.handover->new_leader, old.coord,
            make_payload(HandoverRequest{next_seq, old.coord}));
      settle();
    }
  }

  window_ = service_area_at(next, options_.sa, topo_);
  for (auto& n : nodes_) {
    n->gossip.evict_before(next);
    n->sync_followers.clear();
  }
  const int32_t ppc = options_.sa.periods_per_cycle;
  metrics_.record_period(ppc > 0 && next % ppc == 0);
  if (transition_hook_) transition_hook_(TransitionPoint::kBorderAdvanced);

  if (plan.handover) {
    Node& fresh = node(plan.handover->new_leader);
    if (!fresh.sequencer)
      throw InvariantViolation("leader handover to " + to_string(fresh.coord) + " did not complete");
    broadcast(fresh, GossipBody{LeaderAnnouncement{fresh.coord}});
    if (transition_hook_) transition_hook_(TransitionPoint::kAnnouncementStarted);
    settle();
  }
  return plan;
}

// --- queries ---------------------------------------------------------------------------------

ConvergenceReport Simulation::check_convergence() const {
  ConvergenceReport r;
  r.period = period();
  bool first = true;
  for (const GridCoord& c : window_.members()) {
    if (!responsive(c)) continue;
    const Replica& rep = node(c).replica;
    const Digest head = rep.chain().head().hash;
    const Digest state = rep.state_digest();
    if (first) {
      r.height = rep.chain().height();
      r.head = head;
      r.state = state;
      first = false;
      continue;
    }
    if (head != r.head || state != r.state) {
      r.converged = false;
      r.problems.push_back("node " + to_string(c) + " at height " +
                           std::to_string(rep.chain().height()) + " diverges from height " +
                           std::to_string(r.height));
    }
  }
  if (leader_count() != 1) {
    r.converged = false;
    r.problems.push_back(std::to_string(leader_count()) + " nodes believe they are leader");
  }
  return r;
}

namespace {

int rank(TxStatus s) {
  switch (s) {
    case TxStatus::kUnknown: return 0;
    case TxStatus::kSubmitted: return 1;
    case TxStatus::kExecuted: return 2;
    case TxStatus::kOrdered: return 3;
    case TxStatus::kRejected: return 4;
    case TxStatus::kCommitted: return 5;
  }
  return 0;
}

}  // namespace

StatusReport Simulation::query_status(const TxId& id) const {
  StatusReport best;
  for (const GridCoord& c : window_.members()) {
    if (!responsive(c)) continue;
    StatusReport r = node(c).replica.query_status(id);
    if (rank(r.status) > rank(best.status)) best = std::move(r);
  }
  if (auto it = submitted_.find(id); it != submitted_.end() &&
                                     rank(it->second.status) > rank(best.status)) {
    best.status = it->second.status;
    best.reason = it->second.reason;
  }
  return best;
}

QuorumReadResult Simulation::read_state(const std::string& key, size_t r) const {
  const std::vector<const Replica*> members = member_replicas();
  if (r < 1 || r > members.size())
    throw Error(ErrorCode::kInvalidArgument, "read quorum r must be within [1, " +
                                                 std::to_string(members.size()) + "]");
  return quorum_read(key, std::span<const Replica* const>(members.data(), r));
}

std::vector<NodeView> Simulation::grid() const {
  std::vector<NodeView> out;
  out.reserve(nodes_.size());
  for (const auto& n : nodes_) {
    NodeView v;
    v.coord = n->coord;
    v.responsive = responsive(n->coord);
    if (n->sequencer)
      v.role = NodeRole::kLeader;
    else if (window_.contains(n->coord))
      v.role = n->coord.plane == options_.leader_row_plane ? NodeRole::kLeaderRow : NodeRole::kServiceArea;
    v.height = n->replica.chain().height();
    v.head = n->replica.chain().head().hash;
    v.state = n->replica.state_digest();
    out.push_back(std::move(v));
  }
  return out;
}

GridCoord Simulation::random_outside_node() {
  std::vector<GridCoord> outside;
  for (const auto& n : nodes_)
    if (!window_.contains(n->coord)) outside.push_back(n->coord);
  if (outside.empty()) outside = window_.members();
  std::uniform_int_distribution<size_t> pick(0, outside.size() - 1);
  return outside[pick(rng_)];
}

}  // namespace leochain
