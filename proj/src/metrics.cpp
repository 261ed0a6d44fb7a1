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

#include "leochain/metrics.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "leochain/errors.hpp"

namespace leochain {

const char* to_string(MessageKind k) {
  switch (k) {
    case MessageKind::kGossip: return "gossip";
    case MessageKind::kRouteExecute: return "route_execute";
    case MessageKind::kExecuteTransactions: return "execute_transactions";
    case MessageKind::kOrderTransaction: return "order_transaction";
    case MessageKind::kSyncBlocks: return "sync_blocks";
    case MessageKind::kSyncState: return "sync_state";
    case MessageKind::kLeaderHandover: return "leader_handover";
    case MessageKind::kClientQuery: return "client_query";
  }
  return "?";
}

std::optional<MessageKind> parse_message_kind(std::string_view name) {
  for (MessageKind k : kAllMessageKinds)
    if (name == to_string(k)) return k;
  return std::nullopt;
}

uint64_t MetricsSnapshot::count(MessageKind kind, const GridCoord& c, Attribution a) const {
  const auto& v = (a == Attribution::kSender ? sent : delivered)[kind_index(kind)];
  return v.at(static_cast<size_t>(c.plane) * static_cast<size_t>(slots) +
              static_cast<size_t>(c.slot));
}

uint64_t MetricsSnapshot::total(MessageKind kind, Attribution a) const {
  const auto& v = (a == Attribution::kSender ? sent : delivered)[kind_index(kind)];
  return std::accumulate(v.begin(), v.end(), uint64_t{0});
}

uint64_t MetricsSnapshot::total_messages(Attribution a) const {
  uint64_t t = 0;
  for (MessageKind k : kAllMessageKinds) t += total(k, a);
  return t;
}

Metrics::Metrics(const TorusTopology& topo) : topo_(topo) {
  snap_.planes = topo.planes();
  snap_.slots = topo.slots_per_plane();
  for (auto& v : snap_.sent) v.assign(topo.node_count(), 0);
  for (auto& v : snap_.delivered) v.assign(topo.node_count(), 0);
}

void Metrics::record(MessageKind kind, const GridCoord& src) {
  ++snap_.sent[kind_index(kind)][topo_.index(src)];
}

void Metrics::record_delivery(MessageKind kind, const GridCoord& dst) {
  ++snap_.delivered[kind_index(kind)][topo_.index(dst)];
}

std::map<MessageKind, double> shares(const MetricsSnapshot& snap) {
  const uint64_t total = snap.total_messages();
  if (total == 0) throw Error(ErrorCode::kInvalidArgument, "proportions undefined: no messages");
  std::map<MessageKind, double> out;
  for (MessageKind k : kAllMessageKinds)
    out[k] = static_cast<double>(snap.total(k)) / static_cast<double>(total);
  return out;
}

std::map<MessageKind, int> proportions(const MetricsSnapshot& snap) {
  std::map<MessageKind, int> out;
  for (const auto& [k, s] : shares(snap)) out[k] = static_cast<int>(std::lround(100.0 * s));
  return out;
}

std::vector<uint64_t> distribution(const MetricsSnapshot& snap, Axis axis, MessageKind kind,
                                   Attribution a) {
  const auto& v = (a == Attribution::kSender ? snap.sent : snap.delivered)[kind_index(kind)];
  std::vector<uint64_t> out(static_cast<size_t>(axis == Axis::kPlane ? snap.planes : snap.slots), 0);
  for (int32_t p = 0; p < snap.planes; ++p) {
    for (int32_t s = 0; s < snap.slots; ++s) {
      const uint64_t c = v[static_cast<size_t>(p) * static_cast<size_t>(snap.slots) +
                           static_cast<size_t>(s)];
      out[static_cast<size_t>(axis == Axis::kPlane ? p : s)] += c;
    }
  }
  return out;
}

LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    throw Error(ErrorCode::kInvalidArgument, "linear_fit needs >= 2 paired samples");
  const double n = static_cast<double>(xs.size());
  const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / n;
  const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  if (sxx == 0) throw Error(ErrorCode::kInvalidArgument, "linear_fit needs distinct x values");
  LinearFit f;
  f.slope = sxy / sxx;
  f.intercept = my - f.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (f.slope * xs[i] + f.intercept);
    ss_res += r * r;
  }
  f.r_squared = syy == 0 ? 1.0 : 1.0 - ss_res / syy;
  return f;
}

std::string metrics_csv(const MetricsSnapshot& snap) {
  std::ostringstream out;
  out << "kind,plane,slot,sent,delivered\n";
  for (MessageKind k : kAllMessageKinds) {
    for (int32_t p = 0; p < snap.planes; ++p) {
      for (int32_t s = 0; s < snap.slots; ++s) {
        const uint64_t sent = snap.count(k, {p, s}, Attribution::kSender);
        const uint64_t got = snap.count(k, {p, s}, Attribution::kReceiver);
        if (sent == 0 && got == 0) continue;
        out << to_string(k) << ',' << p << ',' << s << ',' << sent << ',' << got << '\n';
      }
    }
  }
  return out.str();
}

Document metrics_json(const MetricsSnapshot& snap) {
  Document totals = Document::object();
  Document delivered = Document::object();
  for (MessageKind k : kAllMessageKinds) {
    totals[to_string(k)] = snap.total(k);
    delivered[to_string(k)] = snap.total(k, Attribution::kReceiver);
  }
  Document doc;
  doc["schema"] = "leochain.metrics/1";
  doc["grid"] = {{"planes", snap.planes}, {"slots_per_plane", snap.slots}};
  doc["totals"] = std::move(totals);
  doc["delivered_totals"] = std::move(delivered);
  doc["total_messages"] = snap.total_messages();
  doc["commits"] = snap.commits;
  doc["migrations"] = snap.migrations;
  doc["periods_elapsed"] = snap.periods_elapsed;
  doc["cycles_elapsed"] = snap.cycles_elapsed;
  if (snap.total_messages() > 0) {
    Document props = Document::object();
    for (const auto& [k, pct] : proportions(snap)) props[to_string(k)] = pct;
    doc["proportions"] = std::move(props);
  } else {
    doc["proportions"] = nullptr;
  }
  Document dist = Document::object();
  for (MessageKind k : {MessageKind::kGossip}) {
    dist[to_string(k)] = {
        {"plane_sent", distribution(snap, Axis::kPlane, k, Attribution::kSender)},
        {"plane_delivered", distribution(snap, Axis::kPlane, k, Attribution::kReceiver)},
        {"slot_sent", distribution(snap, Axis::kSlot, k, Attribution::kSender)},
        {"slot_delivered", distribution(snap, Axis::kSlot, k, Attribution::kReceiver)},
    };
  }
  doc["distribution"] = std::move(dist);
  return doc;
}

}  // namespace leochain
