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

// Deterministic discrete-event transport over single-hop ISL links.
//
// Virtual time is an integer tick; a hop takes `link_delay` ticks. Events
// that land on the same tick are delivered in enqueue order. The trace
// records one line per delivery:
//
//   {"dst":[p,s],"id":N,"kind":"gossip","src":[p,s],"tick":T}

#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <queue>
#include <random>
#include <vector>

#include "leochain/message.hpp"
#include "leochain/metrics.hpp"
#include "leochain/topology.hpp"

namespace leochain {

using Tick = int64_t;

struct NetworkOptions {
  Tick link_delay = 1;
  /// Per-hop loss probability; 0 in the evaluation model.
  double drop_probability = 0.0;
  uint64_t seed = 1;
  /// Livelock guard for a single run_until_quiescent call.
  Tick max_ticks = 1'000'000;
  bool record_trace = false;
};

struct TraceRecord {
  Tick tick = 0;
  MessageKind kind = MessageKind::kGossip;
  GridCoord src;
  GridCoord dst;
  MessageId id = 0;

  friend bool operator==(const TraceRecord&, const TraceRecord&) = default;
};

class Network {
 public:
  using Handler = std::function<void(const Message&)>;
  /// Return false to drop a delivery (e.g. unresponsive receiver).
  using DeliveryFilter = std::function<bool(const Message&)>;

  Network(const TorusTopology& topo, NetworkOptions options, Metrics* metrics);

  void set_handler(Handler h) { handler_ = std::move(h); }
  void set_delivery_filter(DeliveryFilter f) { filter_ = std::move(f); }

  /// Enqueues `m` for delivery at now + link_delay + extra_delay and counts it
  /// against (kind, src). Throws ProtocolViolation unless dst is one of src's
  /// neighbors. Fills m.arrival from the link direction.
  void send(Message m, Tick extra_delay = 0);

  MessageId next_message_id() { return ++last_id_; }

  Tick now() const noexcept { return now_; }
  bool idle() const noexcept { return queue_.empty(); }
  size_t pending() const noexcept { return queue_.size(); }

  /// Delivers until the queue is empty; returns ticks elapsed. Throws
  /// InvariantViolation when more than max_ticks elapse.
  Tick run_until_quiescent();
  /// Delivers every event due within the next `ticks` ticks.
  void run_for(Tick ticks);

  uint64_t sent_count() const noexcept { return sent_; }
  uint64_t delivered_count() const noexcept { return delivered_; }
  uint64_t dropped_count() const noexcept { return dropped_; }

  const std::vector<TraceRecord>& trace() const noexcept { return trace_; }
  void write_trace(std::ostream& out) const;

  const TorusTopology& topology() const noexcept { return topo_; }

 private:
  struct Event {
    Tick time;
    uint64_t seq;
    Message message;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  void deliver(Event ev);

  TorusTopology topo_;
  NetworkOptions options_;
  Metrics* metrics_;
  Handler handler_;
  DeliveryFilter filter_;
  std::priority_queue<Event, std::vector<Event>, Later> queue_;
  std::mt19937_64 rng_;
  std::bernoulli_distribution drop_;
  Tick now_ = 0;
  uint64_t enqueue_seq_ = 0;
  MessageId last_id_ = 0;
  uint64_t sent_ = 0;
  uint64_t delivered_ = 0;
  uint64_t dropped_ = 0;
  std::vector<TraceRecord> trace_;
};

}  // namespace leochain
