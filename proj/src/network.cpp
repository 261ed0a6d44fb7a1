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

#include "leochain/network.hpp"

#include <map>
#include <ostream>
#include <sstream>

#include "leochain/errors.hpp"

namespace leochain {

Network::Network(const TorusTopology& topo, NetworkOptions options, Metrics* metrics)
    : topo_(topo),
      options_(options),
      metrics_(metrics),
      rng_(options.seed),
      drop_(options.drop_probability) {
  if (options.drop_probability < 0.0 || options.drop_probability > 1.0)
    throw ConfigError("drop_probability must be within [0, 1]");
  if (options.link_delay < 1) throw ConfigError("link_delay must be >= 1 tick");
}

void Network::send(Message m, Tick extra_delay) {
  const auto dir = topo_.direction_to(m.src, m.dst);
  if (!dir || m.src == m.dst) {
    throw ProtocolViolation(std::string("single-hop violation: ") + to_string(m.kind) +
                            " from " + to_string(m.src) + " to non-neighbor " + to_string(m.dst));
  }
  // Keep a caller-chosen arrival when it names a real link (degenerate grids
  // have two links to the same node).
  if (topo_.neighbor(m.dst, m.arrival) != m.src) m.arrival = opposite(*dir);
  if (metrics_) metrics_->record(m.kind, m.src);
  ++sent_;
  queue_.push(Event{now_ + options_.link_delay + extra_delay, enqueue_seq_++, std::move(m)});
}

void Network::deliver(Event ev) {
  now_ = ev.time;
  const Message& m = ev.message;
  if (options_.drop_probability > 0.0 && drop_(rng_)) {
    ++dropped_;
    return;
  }
  if (filter_ && !filter_(m)) {
    ++dropped_;
    return;
  }
  ++delivered_;
  if (metrics_) metrics_->record_delivery(m.kind, m.dst);
  if (options_.record_trace) trace_.push_back(TraceRecord{now_, m.kind, m.src, m.dst, m.id});
  if (handler_) handler_(m);
}

Tick Network::run_until_quiescent() {
  const Tick start = now_;
  while (!queue_.empty()) {
    if (queue_.top().time - start > options_.max_ticks) {
      std::map<std::string, size_t> by_kind;
      size_t n = 0;
      auto copy = queue_;
      while (!copy.empty() && n++ < 10000) {
        ++by_kind[to_string(copy.top().message.kind)];
        copy.pop();
      }
      std::ostringstream diag;
      diag << "livelock guard: more than " << options_.max_ticks << " ticks without quiescence; "
           << queue_.size() << " events pending (";
      for (const auto& [k, c] : by_kind) diag << k << "=" << c << " ";
      diag << ")";
      throw InvariantViolation(diag.str());
    }
    Event ev = queue_.top();
    queue_.pop();
    deliver(std::move(ev));
  }
  return now_ - start;
}

void Network::run_for(Tick ticks) {
  const Tick until = now_ + ticks;
  while (!queue_.empty() && queue_.top().time <= until) {
    Event ev = queue_.top();
    queue_.pop();
    deliver(std::move(ev));
  }
  now_ = until;
}

void Network::write_trace(std::ostream& out) const {
  for (const auto& r : trace_) {
    out << "{\"dst\":[" << r.dst.plane << ',' << r.dst.slot << "],\"id\":" << r.id
        << ",\"kind\":\"" << to_string(r.kind) << "\",\"src\":[" << r.src.plane << ','
        << r.src.slot << "],\"tick\":" << r.tick << "}\n";
  }
}

}  // namespace leochain
