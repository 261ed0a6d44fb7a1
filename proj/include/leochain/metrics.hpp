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

// Per-hop message accounting.
//
// Each hop is attributed twice: to the sending node (`sent`, the primary
// counter) and, when it is delivered, to the receiving node (`delivered`).
// The two agree on totals in a lossless run but not per node: a broadcast
// origin sends more than it forwards and receives nothing back, so the
// leader's plane is the busiest sender and the quietest receiver.

#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "leochain/message.hpp"
#include "leochain/topology.hpp"

namespace leochain {

enum class Axis : uint8_t { kPlane, kSlot };
enum class Attribution : uint8_t { kSender, kReceiver };

struct MetricsSnapshot {
  int32_t planes = 0;
  int32_t slots = 0;
  // [kind][node index]
  std::array<std::vector<uint64_t>, kMessageKindCount> sent;
  std::array<std::vector<uint64_t>, kMessageKindCount> delivered;
  uint64_t commits = 0;
  uint64_t migrations = 0;
  int64_t periods_elapsed = 0;
  int64_t cycles_elapsed = 0;

  uint64_t count(MessageKind kind, const GridCoord& c,
                 Attribution a = Attribution::kSender) const;
  uint64_t total(MessageKind kind, Attribution a = Attribution::kSender) const;
  uint64_t total_messages(Attribution a = Attribution::kSender) const;

  friend bool operator==(const MetricsSnapshot&, const MetricsSnapshot&) = default;
};

class Metrics {
 public:
  explicit Metrics(const TorusTopology& topo);

  /// Once per send().
  void record(MessageKind kind, const GridCoord& src);
  void record_delivery(MessageKind kind, const GridCoord& dst);
  void record_commit() { ++snap_.commits; }
  void record_migration() { ++snap_.migrations; }
  void record_period(bool completes_cycle) {
    ++snap_.periods_elapsed;
    if (completes_cycle) ++snap_.cycles_elapsed;
  }

  const MetricsSnapshot& view() const noexcept { return snap_; }
  MetricsSnapshot snapshot() const { return snap_; }

 private:
  TorusTopology topo_;
  MetricsSnapshot snap_;
};

/// Integer percentages (half away from zero). Throws Error with kInvalidArgument
/// when no messages were counted.
std::map<MessageKind, int> proportions(const MetricsSnapshot& snap);
/// Unrounded shares in [0, 1].
std::map<MessageKind, double> shares(const MetricsSnapshot& snap);

/// Marginal counts along `axis`, summed over the other axis.
std::vector<uint64_t> distribution(const MetricsSnapshot& snap, Axis axis, MessageKind kind,
                                   Attribution a = Attribution::kSender);

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

/// Ordinary least squares; requires at least two distinct x values.
LinearFit linear_fit(const std::vector<double>& xs, const std::vector<double>& ys);

/// "kind,plane,slot,sent,delivered" with one row per non-zero cell.
std::string metrics_csv(const MetricsSnapshot& snap);
/// Summary document (schema "leochain.metrics/1").
Document metrics_json(const MetricsSnapshot& snap);

}  // namespace leochain
