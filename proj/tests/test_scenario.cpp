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

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "leochain/errors.hpp"
#include "leochain/scenario.hpp"

using namespace leochain;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("leochain_test_" + name);
  fs::remove_all(p);
  return p;
}

ScenarioConfig small(uint64_t seed = 42) {
  ScenarioConfig c;
  c.seed = seed;
  c.planes = 4;
  c.slots_per_plane = 8;
  c.sa = ServiceAreaSpec{0, 3, 3, 0, 8, false};
  c.cycles = 1;
  return c;
}

std::vector<std::string> problems_of(const Document& doc) {
  try {
    config_from_json(doc);
  } catch (const ConfigError& e) {
    return e.problems();
  }
  return {};
}

bool mentions(const std::vector<std::string>& problems, const std::string& what) {
  for (const auto& p : problems)
    if (p.find(what) != std::string::npos) return true;
  return false;
}

}  // namespace

TEST_CASE("config round-trip is the identity") {
  ScenarioConfig c = small(7);
  CHECK(config_from_json(config_to_json(c)) == c);

  c.batch_size = 3;
  c.drop_probability = 0.05;
  c.sync_trigger = SyncTriggerMode::kExternal;
  c.gossip_policy = GossipPolicy::kEastWestFirst;
  c.unresponsive = {{2, 3}};
  c.workload.create_balances = {5, 6, 7};
  c.workload.bootstrap_creates = 2;
  c.submitter = SubmitterSpec{SubmitterMode::kFixed, 4, {3, 6}};
  c.sa.stationary = true;
  c.out_dir = "somewhere";
  const Document once = config_to_json(c);
  const ScenarioConfig back = config_from_json(once);
  CHECK(back == c);
  CHECK(config_to_json(back) == once);
}

TEST_CASE("minimal config takes documented defaults") {
  const ScenarioConfig c = config_from_json(Document{{"seed", 9}});
  CHECK(c.seed == 9);
  CHECK(c.planes == 4);
  CHECK(c.slots_per_plane == 28);
  CHECK(c.sa.slot_width == 7);
  CHECK(c.sa.periods_per_cycle == 28);
  CHECK(c.cycles == 10);
  CHECK(c.periods() == 280);
  CHECK(c.workload.create_balances == std::vector<int64_t>{10, 0});
  CHECK(c.drop_probability == 0.0);
}

TEST_CASE("config errors are listed exhaustively") {
  const Document doc = {
      {"grid", {{"planes", 0}, {"slots_per_plane", "many"}}},
      {"cycles", -1},
      {"servce_area", Document::object()},
      {"sync_trigger", "sometimes"},
      {"batch_size", 0},
      {"drop_probability", 1.5},
      {"workload", {{"create_balances", {1, -2}}}},
      {"submitter", {{"mode", "wherever"}}},
  };
  const auto p = problems_of(doc);
  CHECK(p.size() >= 9);
  CHECK(mentions(p, "seed"));
  CHECK(mentions(p, "servce_area"));
  CHECK(mentions(p, "grid.planes"));
  CHECK(mentions(p, "slots_per_plane"));
  CHECK(mentions(p, "cycles"));
  CHECK(mentions(p, "sync_trigger"));
  CHECK(mentions(p, "batch_size"));
  CHECK(mentions(p, "drop_probability"));
  CHECK(mentions(p, "create_balances"));
  CHECK(mentions(p, "submitter.mode"));
}

TEST_CASE("semantic errors against the grid") {
  Document doc = config_to_json(small());
  doc["service_area"]["slot_width"] = 9;
  doc["leader_row_plane"] = 7;
  doc["unresponsive"] = Document::array({Document::array({9, 9})});
  const auto p = problems_of(doc);
  CHECK(mentions(p, "slot_width"));
  CHECK(mentions(p, "leader_row_plane"));
  CHECK(mentions(p, "unresponsive"));
  CHECK(problems_of(Document::array()).size() == 1);
  CHECK(mentions(problems_of(Document{{"seed", -4}}), "seed"));
  CHECK(mentions(problems_of(Document{{"seed", 1}, {"schema", "leochain.scenario/9"}}), "schema"));
}

TEST_CASE("load_config reports unreadable files as config errors") {
  CHECK_THROWS_AS(load_config("/nonexistent/leochain.json"), ConfigError);
  const fs::path p = fresh_dir("badjson.json");
  std::ofstream(p) << "{ not json";
  CHECK_THROWS_AS(load_config(p), ConfigError);
  const ScenarioConfig c = load_config(fs::path(LEOCHAIN_SOURCE_DIR) / "configs" / "evaluation_7x4.json");
  CHECK(c.seed == 20260101);
  CHECK(c.sa.slot_width == 7);
}

TEST_CASE("k ranges") {
  CHECK(parse_k_range("5..10") == std::vector<int32_t>{5, 6, 7, 8, 9, 10});
  CHECK(parse_k_range("5,7,9") == std::vector<int32_t>{5, 7, 9});
  CHECK(parse_k_range("6") == std::vector<int32_t>{6});
  CHECK_THROWS(parse_k_range("10..5"));
  CHECK_THROWS(parse_k_range("a..b"));
  CHECK_THROWS(parse_k_range(""));
}

TEST_CASE("zero cycles: empty metrics, valid empty outputs") {
  ScenarioConfig c = small();
  c.cycles = 0;
  c.out_dir = fresh_dir("zero").string();
  const ScenarioResult r = run_scenario(c);
  CHECK(r.metrics.total_messages() == 0);
  CHECK(r.metrics.periods_elapsed == 0);
  CHECK(r.submitted == 0);
  const fs::path dir = c.out_dir;
  for (const char* f : {"summary.json", "metrics.csv", "trace.jsonl", "chain.jsonl", "state.json"})
    CHECK(fs::exists(dir / f));
  const Document s = Document::parse(slurp(dir / "summary.json"));
  CHECK(s.at("schema") == "leochain.summary/1");
  CHECK(s.at("metrics").at("total_messages") == 0);
  CHECK(s.at("metrics").at("proportions").is_null());
  CHECK(slurp(dir / "metrics.csv") == "kind,plane,slot,sent,delivered\n");
  CHECK(slurp(dir / "trace.jsonl").empty());
  std::istringstream chain(slurp(dir / "chain.jsonl"));
  std::string line;
  int lines = 0;
  while (std::getline(chain, line)) ++lines;
  CHECK(lines == 1);  // genesis only
  CHECK(Document::parse(slurp(dir / "state.json")).at("entries").empty());
  CHECK_NOTHROW(write_report(dir));
}

TEST_CASE("evaluation loop bookkeeping") {
  const ScenarioResult r = run_scenario(small());
  CHECK(r.metrics.periods_elapsed == 8);
  CHECK(r.metrics.cycles_elapsed == 1);
  CHECK(r.submitted == 24);
  CHECK(r.committed == 24);
  CHECK(r.rejected == 0);
  CHECK(r.violations.empty());
  CHECK(r.convergence_checks == 16);
  CHECK(r.metrics.migrations == 32);
  CHECK(r.metrics.commits == 24 * 12);
  CHECK(r.created_balance == 80);
  CHECK(r.final_balance == 80);
  CHECK(r.leader_changes_while_member == 0);
  CHECK(r.final_height == 24);
}

TEST_CASE("same seed, same bytes; different seed, different chain") {
  ScenarioConfig c = small();
  c.out_dir = fresh_dir("det_a").string();
  run_scenario(c);
  const std::string report_a = write_report(c.out_dir);
  ScenarioConfig d = small();
  d.out_dir = fresh_dir("det_b").string();
  run_scenario(d);
  const std::string report_b = write_report(d.out_dir);
  CHECK(report_a == report_b);
  for (const char* f : {"summary.json", "metrics.csv", "trace.jsonl", "chain.jsonl", "state.json", "report.txt",
                        "report.json", "proportions.csv", "distribution_plane.csv", "distribution_slot.csv"}) {
    CAPTURE(f);
    CHECK(slurp(fs::path(c.out_dir) / f) == slurp(fs::path(d.out_dir) / f));
  }
  ScenarioConfig e = small(43);
  e.out_dir = fresh_dir("det_c").string();
  run_scenario(e);
  CHECK(slurp(fs::path(c.out_dir) / "chain.jsonl") != slurp(fs::path(e.out_dir) / "chain.jsonl"));
}

TEST_CASE("golden chain file") {
  ScenarioConfig c = small(2026);
  c.out_dir = fresh_dir("golden").string();
  run_scenario(c);
  const std::string got = slurp(fs::path(c.out_dir) / "chain.jsonl");
  const fs::path golden = fs::path(LEOCHAIN_GOLDEN_DIR) / "chain_4x8_k3_seed2026.jsonl";
  if (std::getenv("LEOCHAIN_UPDATE_GOLDEN")) {
    std::ofstream(golden, std::ios::binary) << got;
    MESSAGE("rewrote " << golden.string());
  }
  REQUIRE(fs::exists(golden));
  CHECK(got == slurp(golden));

  // The golden chain verifies on its own: every hash recomputes from the
  // documented preimage.
  Blockchain chain;
  std::istringstream in(slurp(golden));
  std::string line;
  std::vector<Block> blocks;
  while (std::getline(in, line)) blocks.push_back(block_from_json(Document::parse(line)));
  REQUIRE(blocks.size() == 25);
  CHECK(blocks.front().hash == chain.head().hash);
  chain.extend(std::vector<Block>(blocks.begin() + 1, blocks.end()));
  CHECK(chain.verifies());
  for (const Block& b : blocks)
    CHECK(b.hash == Sha256::of(std::to_string(b.height) + "\n" + b.prev_hash.hex() + "\n" + canonical_encoding(b.tx)));
}

TEST_CASE("demo constellation: 280 periods and 1120 migrations") {
  ScenarioConfig c;
  c.seed = 1;
  c.sa = ServiceAreaSpec{0, 3, 6, 0, 28, false};
  c.record_trace = false;
  const ScenarioResult r = run_scenario(c);
  CHECK(r.metrics.periods_elapsed == 280);
  CHECK(r.metrics.migrations == 1120);
  CHECK(r.violations.empty());
}

TEST_CASE("sweep covers the requested widths and writes its files") {
  ScenarioConfig c = small();
  c.sa.periods_per_cycle = 8;
  c.out_dir = fresh_dir("sweep").string();
  const SweepResult s = run_sweep(c, {1, 2, 3, 4});
  REQUIRE(s.points.size() == 4);
  for (size_t i = 0; i < 4; ++i) {
    CHECK(s.points[i].k == static_cast<int32_t>(i + 1));
    CHECK(s.points[i].sa_nodes == static_cast<int32_t>(4 * (i + 1)));
    CHECK(s.points[i].metrics.commits == s.points[i].committed * s.points[i].sa_nodes);
    CHECK(fs::exists(fs::path(c.out_dir) / ("k" + std::to_string(i + 1)) / "summary.json"));
  }
  const Document doc = Document::parse(slurp(fs::path(c.out_dir) / "sweep.json"));
  CHECK(doc.at("schema") == "leochain.sweep/1");
  CHECK(doc.at("points").size() == 4);
  const std::string report = write_report(c.out_dir);
  CHECK(report.find("R^2") != std::string::npos);
  for (const char* f : {"sweep_points.csv", "fit.csv", "report.json", "report.txt"})
    CHECK(fs::exists(fs::path(c.out_dir) / f));
  CHECK(sweep_json(s) == doc);
}

TEST_CASE("report proportions pass through from the summary") {
  ScenarioConfig c = small();
  c.out_dir = fresh_dir("report").string();
  const ScenarioResult r = run_scenario(c);
  write_report(c.out_dir);
  const Document rep = Document::parse(slurp(fs::path(c.out_dir) / "report.json"));
  const auto p = proportions(r.metrics);
  for (MessageKind k : kAllMessageKinds) CHECK(rep.at("proportions").at(to_string(k)) == p.at(k));
  CHECK_THROWS(write_report(fresh_dir("empty_report")));
}

TEST_CASE("submitter placement modes") {
  Simulation sim(small().simulation_options());
  const GridCoord leader = *sim.leader();
  const GridCoord side = workload_submitter(SubmitterSpec{SubmitterMode::kLeaderSide, 2, {}}, sim);
  CHECK(side.plane == leader.plane);
  CHECK_FALSE(sim.window().contains(side));
  const GridCoord opp = workload_submitter(SubmitterSpec{SubmitterMode::kOppositeCenter, 0, {}}, sim);
  CHECK_FALSE(sim.window().contains(opp));
  CHECK(workload_submitter(SubmitterSpec{SubmitterMode::kFixed, 0, {2, 5}}, sim) == GridCoord{2, 5});
}
