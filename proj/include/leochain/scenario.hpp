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

// Scenario runner: config parsing, the evaluation period loop, output files,
// K sweeps, and reports. See README.md for the file schemas.

#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "leochain/ledger.hpp"
#include "leochain/metrics.hpp"
#include "leochain/simulation.hpp"

namespace leochain {

enum class SubmitterMode : uint8_t {
  kLeaderSide,      // on the leader row, `offset` hops beyond the window edge nearest the leader
  kOppositeCenter,  // the node diametrically opposite the window center
  kFixed,           // a configured coordinate
};

const char* to_string(SubmitterMode m);

struct WorkloadSpec {
  /// Initial balances of the accounts created each period.
  std::vector<int64_t> create_balances{10, 0};
  /// Transfer from the first to the second account created in the period;
  /// 0 disables it.
  int64_t transfer_amount = 2;
  /// Extra account creations submitted once, before period 0's workload.
  int32_t bootstrap_creates = 0;
  int64_t bootstrap_balance = 0;

  friend bool operator==(const WorkloadSpec&, const WorkloadSpec&) = default;
};

struct SubmitterSpec {
  SubmitterMode mode = SubmitterMode::kLeaderSide;
  int32_t offset = 9;
  GridCoord coord;  // kFixed only

  friend bool operator==(const SubmitterSpec&, const SubmitterSpec&) = default;
};

struct ScenarioConfig {
  uint64_t seed = 0;
  int32_t planes = 4;
  int32_t slots_per_plane = 28;
  ServiceAreaSpec sa{0, 3, 7, 0, 28, false};
  int32_t leader_row_plane = 1;
  int32_t cycles = 10;
  int32_t batch_size = 1;
  double drop_probability = 0.0;
  int64_t link_delay = 1;
  int64_t max_ticks = 1'000'000;
  SyncTriggerMode sync_trigger = SyncTriggerMode::kSelf;
  GossipPolicy gossip_policy = GossipPolicy::kAllDirections;
  bool strict_accounts = false;
  std::vector<GridCoord> unresponsive;
  WorkloadSpec workload;
  SubmitterSpec submitter;
  bool record_trace = true;
  std::string out_dir;  // empty: no files

  int64_t periods() const {
    return int64_t{cycles} * (sa.stationary ? slots_per_plane : sa.periods_per_cycle);
  }
  SimulationOptions simulation_options() const;

  friend bool operator==(const ScenarioConfig&, const ScenarioConfig&) = default;
};

/// Parses a "leochain.scenario/1" document. Every problem (unknown keys,
/// wrong types, invalid values, missing seed) is listed in the ConfigError.
ScenarioConfig config_from_json(const Document& doc);
Document config_to_json(const ScenarioConfig& cfg);
ScenarioConfig load_config(const std::filesystem::path& path);

/// Submitter for the current period.
GridCoord workload_submitter(const SubmitterSpec& spec, const Simulation& sim);

struct ScenarioResult {
  ScenarioConfig config;
  MetricsSnapshot metrics;
  uint64_t submitted = 0;
  uint64_t committed = 0;  // distinct transactions committed
  uint64_t rejected = 0;
  uint64_t convergence_checks = 0;
  std::vector<ConvergenceReport> violations;
  uint64_t leader_changes_while_member = 0;
  int64_t created_balance = 0;  // sum of committed creates
  int64_t final_balance = 0;    // sum of balances on a member replica
  Height final_height = 0;
  Digest final_head;
  Digest final_state;
  double wall_seconds = 0;
  std::unique_ptr<Simulation> sim;
};

/// Runs the evaluation loop: per period, submit the creates and settle,
/// submit the transfer and settle, check convergence, migrate, and check
/// convergence again. Writes outputs when cfg.out_dir is set.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

/// summary.json, metrics.csv, trace.jsonl, chain.jsonl, state.json.
void write_outputs(const ScenarioResult& r, const std::filesystem::path& dir);
Document summary_json(const ScenarioResult& r);
std::string chain_jsonl(const Blockchain& chain);

struct SweepPoint {
  int32_t k = 0;
  int32_t sa_nodes = 0;
  MetricsSnapshot metrics;
  uint64_t committed = 0;
  uint64_t convergence_violations = 0;
  double wall_seconds = 0;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  LinearFit total_fit;
  LinearFit gossip_fit;
  LinearFit commits_fit;
};

/// Runs `cfg` once per slot width in `ks` (in parallel, at most one per core; results keep the
/// order of `ks`). With cfg.out_dir set, each point writes into
/// <out_dir>/k<K>/ and the sweep summary into <out_dir>/sweep.json.
SweepResult run_sweep(const ScenarioConfig& cfg, const std::vector<int32_t>& ks);
Document sweep_json(const SweepResult& s);

/// Parses "5..10" or "5,7,9".
std::vector<int32_t> parse_k_range(const std::string& text);

/// Reads summary.json or sweep.json from `dir` and writes report.txt,
/// report.json, and plot-ready CSVs next to it. Returns the text report.
std::string write_report(const std::filesystem::path& dir);

}  // namespace leochain
