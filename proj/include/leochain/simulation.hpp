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

// Whole-constellation simulation: one node actor per grid coordinate on a
// shared discrete-event network.
//
// Transaction path: the submitter routes the request hop by hop into the
// service area (route_execute, with the last hop into the area counted as
// execute_transactions). The first member to receive it executes it
// locally and routes the result to the leader (order_transaction). The
// leader assigns sequence numbers and gossips the ordered batch; every
// member validates and commits on first receipt.
//
// Period transition: entering nodes sync from their west neighbor, an
// exiting leader hands the sequence counter to the new east-most leader-row
// member, the border advances, and the new leader announces itself by
// gossip.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "leochain/contracts.hpp"
#include "leochain/gossip.hpp"
#include "leochain/ledger.hpp"
#include "leochain/message.hpp"
#include "leochain/metrics.hpp"
#include "leochain/migration.hpp"
#include "leochain/network.hpp"
#include "leochain/ordering.hpp"
#include "leochain/topology.hpp"

namespace leochain {

enum class SyncTriggerMode : uint8_t {
  kSelf,      // the entering node knows its orbit and asks its west neighbor
  kExternal,  // the west neighbor tells the entering node to sync first
};

const char* to_string(SyncTriggerMode m);

struct SimulationOptions {
  int32_t planes = 4;
  int32_t slots_per_plane = 28;
  ServiceAreaSpec sa{0, 3, 6, 0, 28, false};
  int32_t leader_row_plane = 1;
  int32_t batch_size = 1;
  uint64_t seed = 1;
  NetworkOptions network;
  SyncTriggerMode sync_trigger = SyncTriggerMode::kSelf;
  GossipPolicy gossip_policy = GossipPolicy::kAllDirections;
  bool strict_accounts = false;
  std::vector<GridCoord> unresponsive;

  /// Throws ConfigError listing every problem.
  void validate() const;
};

/// Deterministic "tx-<16 hex>" ids from the run seed.
class IdGenerator {
 public:
  explicit IdGenerator(uint64_t seed) : state_(seed ^ 0x6c656f636861696eULL) {}
  TxId next();

 private:
  uint64_t state_;
};

struct ConvergenceReport {
  bool converged = true;
  int64_t period = 0;
  Height height = 0;
  Digest head;
  Digest state;
  std::vector<std::string> problems;
};

enum class NodeRole : uint8_t { kOutside, kServiceArea, kLeaderRow, kLeader };
const char* to_string(NodeRole r);

struct NodeView {
  GridCoord coord;
  NodeRole role = NodeRole::kOutside;
  bool responsive = true;
  Height height = 0;
  Digest head;
  Digest state;
};

/// Called once per transaction, on its first commit anywhere.
struct CommitEvent {
  TxId id;
  Seq seq = 0;
  Height height = 0;
  bool committed = false;
  std::string reason;
};

/// Points inside advance_period() where a hook may inject work. Each fires
/// after that phase's messages are sent and before they are delivered.
enum class TransitionPoint : uint8_t {
  kSyncsStarted,
  kHandoverStarted,  // only when the leader is exiting
  kBorderAdvanced,
  kAnnouncementStarted,  // only after a handover
};

class Simulation {
 public:
  explicit Simulation(SimulationOptions options);
  ~Simulation();
  Simulation(const Simulation&) = delete;
  Simulation& operator=(const Simulation&) = delete;

  const SimulationOptions& options() const noexcept { return options_; }
  const TorusTopology& topology() const noexcept { return topo_; }
  int64_t period() const noexcept { return window_.period(); }
  const ServiceAreaWindow& window() const noexcept { return window_; }
  /// Node currently holding the sequencer; empty only transiently.
  std::optional<GridCoord> leader() const;
  /// Number of nodes that believe they are leader.
  size_t leader_count() const;

  /// Validates the invocation's arguments (InvocationError on mismatch),
  /// assigns an id, and injects the request at `submitter`. Nothing moves
  /// until settle().
  TxId submit(const ContractInvocation& inv, const GridCoord& submitter);
  /// Raw read/write list; read versions are filled in at execution.
  TxId submit_ops(std::vector<Operation> ops, const GridCoord& submitter);

  /// Runs the network to quiescence, flushing partial leader batches, until
  /// nothing is left in flight.
  void settle();

  /// Full transition into the next period. Settles first.
  MigrationPlan advance_period();

  ConvergenceReport check_convergence() const;

  /// Best-known status: the most advanced answer across current members,
  /// falling back to what the client side observed (submitted, executed,
  /// rejected at execution).
  StatusReport query_status(const TxId& id) const;
  bool known_transaction(const TxId& id) const { return submitted_.count(id) != 0; }

  /// Reads `key` from the first `r` responsive members in window order.
  QuorumReadResult read_state(const std::string& key, size_t r) const;

  const Replica& replica(const GridCoord& c) const;
  std::vector<const Replica*> member_replicas() const;
  std::vector<NodeView> grid() const;
  bool responsive(const GridCoord& c) const;

  const Metrics& metrics() const noexcept { return metrics_; }
  const Network& network() const noexcept { return *net_; }
  const ContractRegistry& registry() const noexcept { return registry_; }

  /// Random node outside the service area, drawn from the run seed.
  GridCoord random_outside_node();

  void set_commit_observer(std::function<void(const CommitEvent&)> f) {
    commit_observer_ = std::move(f);
  }
  /// Lets tests and scripts submit while a period transition is in flight.
  void set_transition_hook(std::function<void(TransitionPoint)> f) {
    transition_hook_ = std::move(f);
  }

 private:
  struct Node;

  Node& node(const GridCoord& c);
  const Node& node(const GridCoord& c) const;
  void handle(const Message& m);
  void send_hop(MessageKind kind, const GridCoord& from, const GridCoord& to,
                const GridCoord& origin, const GridCoord& target,
                std::shared_ptr<const Payload> payload, MessageId id = 0, Tick extra_delay = 0);
  void route(MessageKind kind, const GridCoord& from, const GridCoord& target,
             const GridCoord& origin, std::shared_ptr<const Payload> payload);

  void on_submission(const Message& m);
  void on_order_request(const Message& m);
  void on_gossip(const Message& m);
  void on_handover(const Message& m);
  void on_sync_trigger(const Message& m);
  void on_sync_request(const Message& m);
  void on_sync_payload(const Message& m);

  void execute_at(Node& n, const Submission& s);
  void forward_order(Node& n, Transaction tx);
  void sequence(Node& leader, Transaction tx);
  void broadcast(Node& from, GossipBody body);
  void deliver_batch(Node& n, const OrderedBatch& batch);
  void push_to_followers(Node& source);
  void learn_leader(Node& n, const GridCoord& leader);
  void note_outcomes(const std::vector<CommitOutcome>& outcomes);
  void request_sync(Node& n, const GridCoord& source);
  ResponsivePredicate responsive_predicate() const;

  SimulationOptions options_;
  TorusTopology topo_;
  ServiceAreaWindow window_;
  Metrics metrics_;
  std::unique_ptr<Network> net_;
  ContractRegistry registry_;
  IdGenerator ids_;
  std::mt19937_64 rng_;
  std::vector<std::unique_ptr<Node>> nodes_;
  std::set<GridCoord> unresponsive_;

  struct ClientRecord {
    TxStatus status = TxStatus::kSubmitted;
    std::string reason;
  };
  std::map<TxId, ClientRecord> submitted_;
  std::set<TxId> first_commit_seen_;
  std::function<void(const CommitEvent&)> commit_observer_;
  std::function<void(TransitionPoint)> transition_hook_;
};

}  // namespace leochain
