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

// Acceptance run: one PASS/FAIL line per criterion, with the measured value
// and the tolerance it is held to. Exits 1 when anything fails.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "leochain/gossip.hpp"
#include "leochain/scenario.hpp"
#include "leochain/simulation.hpp"
#include "oracles.hpp"

using namespace leochain;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void verdict(bool ok, const std::string& name, const std::string& measured) {
  std::printf("%s %s: %s\n", ok ? "PASS" : "FAIL", name.c_str(), measured.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

ScenarioConfig evaluation() {
  ScenarioConfig c = load_config(fs::path(LEOCHAIN_SOURCE_DIR) / "configs" / "evaluation_7x4.json");
  c.record_trace = false;
  return c;
}

SimulationOptions small_grid(uint64_t seed, int32_t width, bool stationary) {
  SimulationOptions o;
  o.planes = 4;
  o.slots_per_plane = 8;
  o.sa = ServiceAreaSpec{0, 3, width, 0, 8, stationary};
  o.seed = seed;
  return o;
}

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

// --- sweep-based criteria --------------------------------------------------

void sweep_criteria() {
  const std::vector<int32_t> ks{5, 6, 7, 8, 9, 10};
  const SweepResult sweep = run_sweep(evaluation(), ks);

  // Commit law: committed transactions times SA size, and the reference
  // values for 841 transactions.
  const std::vector<uint64_t> expected{16820, 20184, 23548, 26912, 30276, 33640};
  bool law = true, fast = true;
  std::string commits, seconds;
  double slowest = 0;
  for (size_t i = 0; i < sweep.points.size(); ++i) {
    const SweepPoint& p = sweep.points[i];
    law = law && p.metrics.commits == p.committed * static_cast<uint64_t>(p.sa_nodes) &&
          p.metrics.commits == expected[i];
    commits += (i ? "," : "") + std::to_string(p.metrics.commits);
    slowest = std::max(slowest, p.wall_seconds);
    fast = fast && p.wall_seconds < 120.0;
  }
  verdict(law, "commit_count_law",
          "commits {" + commits + "}, transactions " + std::to_string(sweep.points.front().committed) +
              " (exact: tx x SA size = {16820,...,33640})");
  verdict(fast, "runtime_per_configuration", fmt("slowest %.2f s", slowest) + " (< 120 s)");

  const SweepPoint& k7 = sweep.points[2];
  verdict(k7.metrics.migrations == 1120, "migration_count",
          std::to_string(k7.metrics.migrations) + " syncs (exact: 1120)");

  const auto sh = shares(k7.metrics);
  bool mix = std::abs(sh.at(MessageKind::kGossip) * 100 - 86) <= 3 &&
             std::abs(sh.at(MessageKind::kRouteExecute) * 100 - 9) <= 3;
  std::string mix_text;
  for (MessageKind k : kAllMessageKinds) {
    const double pct = sh.at(k) * 100;
    if (k != MessageKind::kGossip && k != MessageKind::kRouteExecute) mix = mix && pct <= 2.0;
    mix_text += std::string(mix_text.empty() ? "" : ", ") + to_string(k) + " " + fmt("%.2f%%", pct);
  }
  verdict(mix, "message_mix_7x4", mix_text + " (gossip 86+-3, route_execute 9+-3, others <= 2)");

  verdict(sweep.total_fit.r_squared >= 0.99 && sweep.gossip_fit.r_squared >= 0.99, "linear_growth",
          fmt("R^2 total %.6f", sweep.total_fit.r_squared) + fmt(", gossip %.6f", sweep.gossip_fit.r_squared) +
              fmt(", slope %.1f msgs/node", sweep.total_fit.slope) + " (R^2 >= 0.99 each)");

  // Per-plane gossip on the receiving side; the sending side is printed for
  // comparison.
  const int32_t leader_plane = evaluation().leader_row_plane;
  std::vector<uint64_t> recv(4, 0), sent(4, 0);
  for (int32_t p = 0; p < 4; ++p)
    for (int32_t s = 0; s < 28; ++s) {
      recv[p] += k7.metrics.count(MessageKind::kGossip, {p, s}, Attribution::kReceiver);
      sent[p] += k7.metrics.count(MessageKind::kGossip, {p, s}, Attribution::kSender);
    }
  bool dip = true;
  for (int32_t p = 0; p < 4; ++p)
    if (p != leader_plane) dip = dip && recv[leader_plane] < recv[p];
  auto list = [](const std::vector<uint64_t>& v) {
    std::string out;
    for (size_t i = 0; i < v.size(); ++i) out += (i ? "," : "") + std::to_string(v[i]);
    return "[" + out + "]";
  };
  verdict(dip, "leader_plane_dip",
          "delivered by plane " + list(recv) + ", sent by plane " + list(sent) + ", leader row plane " +
              std::to_string(leader_plane) + " (strictly lowest delivered)");

  uint64_t violations = 0;
  for (const SweepPoint& p : sweep.points) violations += p.convergence_violations;
  verdict(violations == 0, "convergence_invariant",
          std::to_string(violations) + " violations over 6 runs x 280 periods x 2 checks (exact: 0)");
}

// --- serializability -------------------------------------------------------

struct WorkloadOutcome {
  bool ok = true;
  std::string problem;
  uint64_t txs = 0;
  uint64_t committed = 0;
  uint64_t validation_rejects = 0;
};

WorkloadOutcome serializability_workload(uint64_t seed) {
  WorkloadOutcome out;
  std::mt19937_64 rng(seed);
  auto pick = [&](uint64_t n) { return static_cast<int64_t>(rng() % n); };
  Simulation sim(small_grid(seed, 2 + static_cast<int32_t>(pick(3)), false));
  const int64_t keys = 2 + pick(9);
  const int64_t total = 20 + pick(81);
  std::vector<TxId> ids;

  while (static_cast<int64_t>(ids.size()) < total) {
    const int64_t batch = std::min<int64_t>(1 + pick(8), total - static_cast<int64_t>(ids.size()));
    const auto members = sim.window().members();
    for (int64_t b = 0; b < batch; ++b) {
      std::vector<Operation> ops;
      const int64_t reads = pick(3), writes = 1 + pick(2);
      for (int64_t i = 0; i < reads; ++i) ops.push_back(Operation::read("k" + std::to_string(pick(keys))));
      for (int64_t i = 0; i < writes; ++i)
        ops.push_back(Operation::write("k" + std::to_string(pick(keys)), static_cast<int64_t>(pick(1000))));
      const GridCoord at = pick(5) == 0 ? sim.random_outside_node()
                                        : members[static_cast<size_t>(pick(members.size()))];
      ids.push_back(sim.submit_ops(std::move(ops), at));
    }
    // Same-batch submissions execute against the same state before any of
    // them is ordered, which is where the conflicts come from.
    sim.settle();
    if (pick(3) == 0) sim.advance_period();
  }
  sim.settle();
  out.txs = ids.size();

  auto fail = [&](std::string why) {
    if (out.ok) out.problem = std::move(why);
    out.ok = false;
  };

  const auto replicas = sim.member_replicas();
  const Replica& ref = *replicas.front();
  for (const Replica* r : replicas)
    if (r->seq_log() != ref.seq_log()) fail("members disagree on the seq log");

  oracle::Store serial;
  Seq last = 0;
  std::vector<std::pair<Seq, TxId>> from_chain;
  for (const Block& b : ref.chain().blocks()) {
    if (b.height == 0) continue;
    if (!b.tx.seq || *b.tx.seq <= last) fail("chain not in seq order at height " + std::to_string(b.height));
    last = b.tx.seq.value_or(last);
    from_chain.emplace_back(last, b.tx.id);
    std::vector<oracle::Op> ops;
    for (const Operation& op : b.tx.ops)
      ops.push_back({op.kind == OpKind::kWrite, op.key, op.value, op.read_version});
    if (!oracle::apply_serial(serial, ops)) fail("serial replay refuses " + b.tx.id);
  }
  if (from_chain != ref.committed_log()) fail("chain and committed log differ");
  out.committed = from_chain.size();
  for (const SeqRecord& s : ref.seq_log())
    if (!s.committed) ++out.validation_rejects;

  for (const Replica* r : replicas) {
    const auto& got = r->state().entries();
    if (got.size() != serial.size()) fail("state size differs from the serial replay");
    for (const auto& [k, e] : serial) {
      auto it = got.find(k);
      if (it == got.end() || it->second.value != e.value || it->second.version != e.version)
        fail("state differs from the serial replay at " + k);
    }
  }
  for (const TxId& id : ids) {
    const TxStatus st = sim.query_status(id).status;
    if (st != TxStatus::kCommitted && st != TxStatus::kRejected) fail("transaction left pending: " + id);
  }
  return out;
}

void serializability() {
  int mismatches = 0;
  uint64_t txs = 0, committed = 0, rejects = 0;
  std::string first;
  for (uint64_t w = 0; w < 100; ++w) {
    const WorkloadOutcome o = serializability_workload(0x5e7a11ULL + w);
    txs += o.txs;
    committed += o.committed;
    rejects += o.validation_rejects;
    if (!o.ok) {
      ++mismatches;
      if (first.empty()) first = " first: workload " + std::to_string(w) + ": " + o.problem;
    }
  }
  verdict(mismatches == 0 && rejects > 0, "serializability_oracle",
          std::to_string(mismatches) + " mismatches in 100 workloads, " + std::to_string(txs) + " txs, " +
              std::to_string(committed) + " committed, " + std::to_string(rejects) +
              " rejected at validation" + first + " (exact: 0, with conflicts present)");
}

// --- migration transparency ------------------------------------------------

std::vector<std::vector<SeqRecord>> transparency_run(uint64_t seed, bool stationary) {
  Simulation sim(small_grid(seed, 3, stationary));
  std::mt19937_64 rng(seed ^ 0x7a11);
  auto pick = [&](uint64_t n) { return static_cast<int64_t>(rng() % n); };
  const int64_t periods = 3 * 8;
  for (int64_t p = 0; p < periods; ++p) {
    const int64_t batch = 1 + pick(5);
    for (int64_t b = 0; b < batch; ++b) {
      // Submitters sit at a fixed offset from the leader, so both runs see
      // the same geometry whether or not the area moved.
      const GridCoord leader = *sim.leader();
      const GridCoord at{static_cast<int32_t>((leader.plane + pick(4)) % 4), leader.slot};
      std::vector<Operation> ops;
      if (pick(2) == 0) ops.push_back(Operation::read("k" + std::to_string(pick(6))));
      ops.push_back(Operation::write("k" + std::to_string(pick(6)), static_cast<int64_t>(pick(100))));
      sim.submit_ops(std::move(ops), at);
    }
    sim.settle();
    sim.advance_period();
  }
  sim.settle();
  std::vector<std::vector<SeqRecord>> logs;
  for (const Replica* r : sim.member_replicas()) logs.push_back(r->seq_log());
  return logs;
}

void migration_transparency() {
  uint64_t differences = 0, entries = 0;
  for (uint64_t seed : {11ULL, 12ULL, 13ULL}) {
    const auto moving = transparency_run(seed, false);
    const auto fixed = transparency_run(seed, true);
    if (moving.size() != fixed.size()) ++differences;
    const auto& want = fixed.front();
    entries += want.size();
    for (const auto* logs : {&moving, &fixed})
      for (const auto& log : *logs) {
        const size_t n = std::max(log.size(), want.size());
        for (size_t i = 0; i < n; ++i)
          if (i >= log.size() || i >= want.size() || log[i].seq != want[i].seq || log[i].id != want[i].id)
            ++differences;
      }
  }
  verdict(differences == 0 && entries > 0, "migration_transparency",
          std::to_string(differences) + " differences over 3 seeds x 24 periods, " + std::to_string(entries) +
              " log entries per member (exact: 0)");
}

// --- gossip oracle ---------------------------------------------------------

void gossip_oracle() {
  uint64_t origins = 0, mismatches = 0;
  for (int32_t slots : {28, 10}) {
    const TorusTopology t(4, slots);
    for (int32_t pc = 1; pc <= 4; ++pc)
      for (int32_t pf = 0; pf + pc <= 4; ++pf)
        for (int32_t width = 1; width <= 10; ++width)
          for (int32_t west : {0, slots - 3}) {
            const auto w = service_area_at(0, ServiceAreaSpec{pf, pf + pc - 1, width, west, slots, false}, t);
            const oracle::Rect r{4, slots, pf, pc, west, width};
            for (const GridCoord& origin : w.members()) {
              ++origins;
              const auto got = gossip_broadcast(t, w, origin);
              const auto want = oracle::flood(r, {origin.plane, origin.slot});
              if (got.messages != want.messages || got.delivered.size() != w.size()) ++mismatches;
            }
          }
  }
  verdict(mismatches == 0, "gossip_oracle_equivalence",
          std::to_string(mismatches) + " mismatches over " + std::to_string(origins) +
              " origins, windows 1..10 x 1..4 (exact)");
}

// --- determinism and conservation --------------------------------------------

void determinism_and_conservation() {
  const fs::path root = fs::temp_directory_path() / "leochain_acceptance";
  fs::remove_all(root);
  ScenarioConfig cfg = evaluation();
  cfg.record_trace = true;
  std::vector<ScenarioResult> runs;
  for (const char* name : {"a", "b"}) {
    cfg.out_dir = (root / name).string();
    runs.push_back(run_scenario(cfg));
  }
  size_t files = 0, differing = 0;
  for (const auto& entry : fs::directory_iterator(root / "a")) {
    ++files;
    if (read_file(entry.path()) != read_file(root / "b" / entry.path().filename())) ++differing;
  }
  verdict(differing == 0 && files >= 5, "determinism",
          std::to_string(differing) + " of " + std::to_string(files) +
              " output files differ between two seeded runs (exact: byte-identical)");

  // Conservation over the evaluation run and a spread of other configs.
  uint64_t scenarios = 0, broken = 0;
  auto conserve = [&](const ScenarioResult& r) {
    ++scenarios;
    if (r.final_balance != r.created_balance) ++broken;
  };
  conserve(runs[0]);
  ScenarioConfig other = evaluation();
  other.submitter.mode = SubmitterMode::kOppositeCenter;
  conserve(run_scenario(other));
  other = evaluation();
  other.sync_trigger = SyncTriggerMode::kExternal;
  conserve(run_scenario(other));
  for (uint64_t seed = 1; seed <= 5; ++seed) {
    ScenarioConfig s = evaluation();
    s.seed = seed;
    s.slots_per_plane = 8;
    s.sa = ServiceAreaSpec{0, 3, 3, 0, 8, false};
    s.cycles = 3;
    s.workload.create_balances = {static_cast<int64_t>(seed) * 7, 3, 0};
    s.workload.transfer_amount = 5;
    conserve(run_scenario(s));
  }
  verdict(broken == 0, "conservation",
          std::to_string(broken) + " of " + std::to_string(scenarios) +
              fmt(" scenarios out of balance; evaluation run holds %.0f", static_cast<double>(runs[0].final_balance)) +
              " (exact: sum of balances = sum created)");
  fs::remove_all(root);
}

}  // namespace

int main() {
  try {
    sweep_criteria();
    serializability();
    migration_transparency();
    gossip_oracle();
    determinism_and_conservation();
  } catch (const std::exception& e) {
    std::printf("FAIL acceptance run aborted: %s\n", e.what());
    return 1;
  }
  std::printf("%s: %d failing criteria\n", g_failures ? "FAIL" : "PASS", g_failures);
  return g_failures ? 1 : 0;
}
