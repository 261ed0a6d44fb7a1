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

#include "leochain/scenario.hpp"

#include <algorithm>
#include <chrono>
#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <future>
#include <thread>
#include <set>
#include <sstream>

#include "leochain/contracts.hpp"
#include "leochain/errors.hpp"

namespace leochain {

namespace fs = std::filesystem;

const char* to_string(SubmitterMode m) {
  switch (m) {
    case SubmitterMode::kLeaderSide: return "leader_side";
    case SubmitterMode::kOppositeCenter: return "opposite_center";
    case SubmitterMode::kFixed: return "fixed";
  }
  return "?";
}

SimulationOptions ScenarioConfig::simulation_options() const {
  SimulationOptions o;
  o.planes = planes;
  o.slots_per_plane = slots_per_plane;
  o.sa = sa;
  o.leader_row_plane = leader_row_plane;
  o.batch_size = batch_size;
  o.seed = seed;
  o.network.link_delay = link_delay;
  o.network.drop_probability = drop_probability;
  o.network.max_ticks = max_ticks;
  o.network.record_trace = record_trace;
  o.sync_trigger = sync_trigger;
  o.gossip_policy = gossip_policy;
  o.strict_accounts = strict_accounts;
  o.unresponsive = unresponsive;
  return o;
}

// --- config parsing -----------------------------------------------------------------

namespace {

constexpr const char* kScenarioSchema = "leochain.scenario/1";

/// Collects problems instead of stopping at the first one.
class Reader {
 public:
  explicit Reader(std::vector<std::string>& problems) : problems_(problems) {}

  void keys(const Document& obj, const std::string& where, std::set<std::string> allowed) {
    for (const auto& [k, v] : obj.items()) {
      (void)v;
      if (!allowed.count(k)) problems_.push_back(where + k + ": unknown key");
    }
  }

  template <typename T>
  void integer(const Document& obj, const std::string& where, const char* key, T& out) {
    if (!obj.contains(key)) return;
    const Document& v = obj.at(key);
    if (!v.is_number_integer()) {
      problems_.push_back(where + key + ": expected an integer");
      return;
    }
    if constexpr (std::is_unsigned_v<T>) {
      if (v.is_number_unsigned() || v.get<int64_t>() >= 0) {
        out = v.get<T>();
      } else {
        problems_.push_back(where + key + ": expected a non-negative integer");
      }
    } else {
      out = v.get<T>();
    }
  }

  void number(const Document& obj, const std::string& where, const char* key, double& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_number()) {
      problems_.push_back(where + key + ": expected a number");
      return;
    }
    out = obj.at(key).get<double>();
  }

  void boolean(const Document& obj, const std::string& where, const char* key, bool& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_boolean()) {
      problems_.push_back(where + key + ": expected true or false");
      return;
    }
    out = obj.at(key).get<bool>();
  }

  void string(const Document& obj, const std::string& where, const char* key, std::string& out) {
    if (!obj.contains(key)) return;
    if (!obj.at(key).is_string()) {
      problems_.push_back(where + key + ": expected a string");
      return;
    }
    out = obj.at(key).get<std::string>();
  }

  bool coord(const Document& v, const std::string& where, GridCoord& out) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_number_integer() || !v[1].is_number_integer()) {
      problems_.push_back(where + ": expected [plane, slot]");
      return false;
    }
    out = GridCoord{v[0].get<int32_t>(), v[1].get<int32_t>()};
    return true;
  }

  const Document* object(const Document& obj, const std::string& where, const char* key) {
    if (!obj.contains(key)) return nullptr;
    if (!obj.at(key).is_object()) {
      problems_.push_back(where + key + ": expected an object");
      return nullptr;
    }
    return &obj.at(key);
  }

  void problem(std::string p) { problems_.push_back(std::move(p)); }

 private:
  std::vector<std::string>& problems_;
};

}  // namespace

ScenarioConfig config_from_json(const Document& doc) {
  std::vector<std::string> problems;
  Reader rd(problems);
  ScenarioConfig c;
  if (!doc.is_object()) throw ConfigError("scenario config must be an object");
  rd.keys(doc, "",
          {"schema", "seed", "grid", "service_area", "leader_row_plane", "cycles", "batch_size",
           "drop_probability", "link_delay", "max_ticks", "sync_trigger", "gossip_policy",
           "strict_accounts", "unresponsive", "workload", "submitter", "record_trace", "out_dir"});
  if (doc.contains("schema") && doc.at("schema") != kScenarioSchema)
    rd.problem(std::string("schema: expected \"") + kScenarioSchema + "\"");
  if (!doc.contains("seed")) rd.problem("seed: required (runs are seeded explicitly)");
  rd.integer(doc, "", "seed", c.seed);

  bool ppc_given = false;
  if (const Document* g = rd.object(doc, "", "grid")) {
    rd.keys(*g, "grid.", {"planes", "slots_per_plane"});
    rd.integer(*g, "grid.", "planes", c.planes);
    rd.integer(*g, "grid.", "slots_per_plane", c.slots_per_plane);
  }
  if (const Document* s = rd.object(doc, "", "service_area")) {
    rd.keys(*s, "service_area.",
            {"plane_first", "plane_last", "slot_width", "anchor_slot", "periods_per_cycle",
             "stationary"});
    rd.integer(*s, "service_area.", "plane_first", c.sa.plane_first);
    rd.integer(*s, "service_area.", "plane_last", c.sa.plane_last);
    rd.integer(*s, "service_area.", "slot_width", c.sa.slot_width);
    rd.integer(*s, "service_area.", "anchor_slot", c.sa.anchor_slot);
    ppc_given = s->contains("periods_per_cycle");
    rd.integer(*s, "service_area.", "periods_per_cycle", c.sa.periods_per_cycle);
    rd.boolean(*s, "service_area.", "stationary", c.sa.stationary);
  }
  if (!ppc_given) c.sa.periods_per_cycle = c.slots_per_plane;
  rd.integer(doc, "", "leader_row_plane", c.leader_row_plane);
  rd.integer(doc, "", "cycles", c.cycles);
  rd.integer(doc, "", "batch_size", c.batch_size);
  rd.number(doc, "", "drop_probability", c.drop_probability);
  rd.integer(doc, "", "link_delay", c.link_delay);
  rd.integer(doc, "", "max_ticks", c.max_ticks);
  rd.boolean(doc, "", "strict_accounts", c.strict_accounts);
  rd.boolean(doc, "", "record_trace", c.record_trace);
  rd.string(doc, "", "out_dir", c.out_dir);

  std::string text;
  if (doc.contains("sync_trigger")) {
    rd.string(doc, "", "sync_trigger", text);
    if (text == "self") c.sync_trigger = SyncTriggerMode::kSelf;
    else if (text == "external") c.sync_trigger = SyncTriggerMode::kExternal;
    else if (doc.at("sync_trigger").is_string()) rd.problem("sync_trigger: expected \"self\" or \"external\"");
  }
  if (doc.contains("gossip_policy")) {
    text.clear();
    rd.string(doc, "", "gossip_policy", text);
    if (text == "all_directions") c.gossip_policy = GossipPolicy::kAllDirections;
    else if (text == "east_west_first") c.gossip_policy = GossipPolicy::kEastWestFirst;
    else if (doc.at("gossip_policy").is_string())
      rd.problem("gossip_policy: expected \"all_directions\" or \"east_west_first\"");
  }
  if (doc.contains("unresponsive")) {
    const Document& u = doc.at("unresponsive");
    if (!u.is_array()) {
      rd.problem("unresponsive: expected a list of [plane, slot]");
    } else {
      for (size_t i = 0; i < u.size(); ++i) {
        GridCoord gc;
        if (rd.coord(u[i], "unresponsive[" + std::to_string(i) + "]", gc)) c.unresponsive.push_back(gc);
      }
    }
  }
  if (const Document* w = rd.object(doc, "", "workload")) {
    rd.keys(*w, "workload.", {"create_balances", "transfer_amount", "bootstrap_creates", "bootstrap_balance"});
    if (w->contains("create_balances")) {
      const Document& b = w->at("create_balances");
      if (!b.is_array()) {
        rd.problem("workload.create_balances: expected a list of integers");
      } else {
        c.workload.create_balances.clear();
        for (const auto& v : b) {
          if (v.is_number_integer()) c.workload.create_balances.push_back(v.get<int64_t>());
          else rd.problem("workload.create_balances: expected a list of integers");
        }
      }
    }
    rd.integer(*w, "workload.", "transfer_amount", c.workload.transfer_amount);
    rd.integer(*w, "workload.", "bootstrap_creates", c.workload.bootstrap_creates);
    rd.integer(*w, "workload.", "bootstrap_balance", c.workload.bootstrap_balance);
  }
  if (const Document* s = rd.object(doc, "", "submitter")) {
    rd.keys(*s, "submitter.", {"mode", "offset", "coord"});
    if (s->contains("mode")) {
      text.clear();
      rd.string(*s, "submitter.", "mode", text);
      if (text == "leader_side") c.submitter.mode = SubmitterMode::kLeaderSide;
      else if (text == "opposite_center") c.submitter.mode = SubmitterMode::kOppositeCenter;
      else if (text == "fixed") c.submitter.mode = SubmitterMode::kFixed;
      else if (s->at("mode").is_string())
        rd.problem("submitter.mode: expected \"leader_side\", \"opposite_center\" or \"fixed\"");
    }
    rd.integer(*s, "submitter.", "offset", c.submitter.offset);
    if (s->contains("coord")) rd.coord(s->at("coord"), "submitter.coord", c.submitter.coord);
    else if (c.submitter.mode == SubmitterMode::kFixed) rd.problem("submitter.coord: required for mode \"fixed\"");
  }

  // Semantic checks.
  if (c.cycles < 0) rd.problem("cycles must be >= 0");
  if (c.submitter.offset < 1) rd.problem("submitter.offset must be >= 1");
  if (c.workload.bootstrap_creates < 0) rd.problem("workload.bootstrap_creates must be >= 0");
  if (c.workload.bootstrap_balance < 0) rd.problem("workload.bootstrap_balance must be >= 0");
  for (int64_t b : c.workload.create_balances)
    if (b < 0) rd.problem("workload.create_balances: balances must be >= 0");
  if (c.workload.transfer_amount != 0 && c.workload.create_balances.size() < 2)
    rd.problem("workload.transfer_amount needs at least two create_balances");
  if (c.submitter.mode == SubmitterMode::kFixed &&
      (c.submitter.coord.plane < 0 || c.submitter.coord.plane >= c.planes ||
       c.submitter.coord.slot < 0 || c.submitter.coord.slot >= c.slots_per_plane))
    rd.problem("submitter.coord outside grid");
  try {
    c.simulation_options().validate();
  } catch (const ConfigError& e) {
    problems.insert(problems.end(), e.problems().begin(), e.problems().end());
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  return c;
}

Document config_to_json(const ScenarioConfig& c) {
  Document unresponsive = Document::array();
  for (const GridCoord& g : c.unresponsive) unresponsive.push_back({g.plane, g.slot});
  return {
      {"schema", kScenarioSchema},
      {"seed", c.seed},
      {"grid", {{"planes", c.planes}, {"slots_per_plane", c.slots_per_plane}}},
      {"service_area",
       {{"plane_first", c.sa.plane_first},
        {"plane_last", c.sa.plane_last},
        {"slot_width", c.sa.slot_width},
        {"anchor_slot", c.sa.anchor_slot},
        {"periods_per_cycle", c.sa.periods_per_cycle},
        {"stationary", c.sa.stationary}}},
      {"leader_row_plane", c.leader_row_plane},
      {"cycles", c.cycles},
      {"batch_size", c.batch_size},
      {"drop_probability", c.drop_probability},
      {"link_delay", c.link_delay},
      {"max_ticks", c.max_ticks},
      {"sync_trigger", to_string(c.sync_trigger)},
      {"gossip_policy",
       c.gossip_policy == GossipPolicy::kAllDirections ? "all_directions" : "east_west_first"},
      {"strict_accounts", c.strict_accounts},
      {"unresponsive", std::move(unresponsive)},
      {"workload",
       {{"create_balances", c.workload.create_balances},
        {"transfer_amount", c.workload.transfer_amount},
        {"bootstrap_creates", c.workload.bootstrap_creates},
        {"bootstrap_balance", c.workload.bootstrap_balance}}},
      {"submitter",
       {{"mode", to_string(c.submitter.mode)},
        {"offset", c.submitter.offset},
        {"coord", {c.submitter.coord.plane, c.submitter.coord.slot}}}},
      {"record_trace", c.record_trace},
      {"out_dir", c.out_dir},
  };
}

ScenarioConfig load_config(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  Document doc;
  try {
    doc = Document::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(doc);
}

// --- run --------------------------------------------------------------------------------

GridCoord workload_submitter(const SubmitterSpec& spec, const Simulation& sim) {
  const TorusTopology& topo = sim.topology();
  const ServiceAreaWindow& w = sim.window();
  switch (spec.mode) {
    case SubmitterMode::kFixed:
      return spec.coord;
    case SubmitterMode::kOppositeCenter: {
      const int32_t center_plane = w.plane_first() + w.plane_count() / 2;
      const int32_t center_slot = topo.wrap_slot(int64_t{w.west_slot()} + w.width() / 2);
      return GridCoord{topo.wrap_plane(int64_t{center_plane} + topo.planes() / 2),
                       topo.wrap_slot(int64_t{center_slot} + topo.slots_per_plane() / 2)};
    }
    case SubmitterMode::kLeaderSide: {
      const GridCoord leader = sim.leader().value_or(w.east_edge().front());
      const int32_t west_gap = w.slot_offset(leader.slot);
      const int32_t east_gap = w.width() - 1 - west_gap;
      const int64_t slot = east_gap <= west_gap ? int64_t{w.east_slot()} + spec.offset
                                                : int64_t{w.west_slot()} - spec.offset;
      return GridCoord{sim.options().leader_row_plane, topo.wrap_slot(slot)};
    }
  }
  return spec.coord;
}

namespace {

int64_t balance_sum(const StateStore& state) {
  int64_t sum = 0;
  for (const auto& [k, e] : state.entries())
    if (e.value.is_object() && e.value.contains("balance") && e.value.at("balance").is_number_integer())
      sum += e.value.at("balance").get<int64_t>();
  return sum;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();
  ScenarioResult r;
  r.config = cfg;
  r.sim = std::make_unique<Simulation>(cfg.simulation_options());
  Simulation& sim = *r.sim;

  std::vector<std::pair<TxId, int64_t>> creates;
  auto check = [&] {
    ++r.convergence_checks;
    ConvergenceReport c = sim.check_convergence();
    if (!c.converged) r.violations.push_back(std::move(c));
  };

  for (int64_t p = 0; p < cfg.periods(); ++p) {
    const std::optional<GridCoord> leader_at_start = sim.leader();
    const GridCoord submitter = workload_submitter(cfg.submitter, sim);
    if (p == 0) {
      for (int32_t i = 0; i < cfg.workload.bootstrap_creates; ++i) {
        creates.emplace_back(sim.submit(account_create(cfg.workload.bootstrap_balance), submitter),
                             cfg.workload.bootstrap_balance);
        ++r.submitted;
      }
    }
    std::vector<TxId> fresh;
    for (int64_t b : cfg.workload.create_balances) {
      fresh.push_back(sim.submit(account_create(b), submitter));
      creates.emplace_back(fresh.back(), b);
      ++r.submitted;
    }
    sim.settle();
    if (cfg.workload.transfer_amount != 0 && fresh.size() >= 2) {
      sim.submit(account_transfer(fresh_key_for(fresh[0]), fresh_key_for(fresh[1]),
                                  cfg.workload.transfer_amount),
                 submitter);
      ++r.submitted;
    }
    sim.settle();
    if (sim.leader() != leader_at_start) ++r.leader_changes_while_member;
    check();

    const std::optional<GridCoord> before = sim.leader();
    const MigrationPlan plan = sim.advance_period();
    if (!plan.handover && sim.leader() != before) ++r.leader_changes_while_member;
    check();
  }
  sim.settle();

  r.metrics = sim.metrics().snapshot();
  const std::vector<const Replica*> members = sim.member_replicas();
  if (!members.empty()) {
    const Replica& rep = *members.front();
    std::set<TxId> committed_ids;
    for (const auto& [seq, id] : rep.committed_log()) committed_ids.insert(id);
    r.committed = committed_ids.size();
    r.rejected = r.submitted - r.committed;
    for (const auto& [id, b] : creates)
      if (committed_ids.count(id)) r.created_balance += b;
    r.final_balance = balance_sum(rep.state());
    r.final_height = rep.chain().height();
    r.final_head = rep.chain().head().hash;
    r.final_state = rep.state_digest();
  }
  r.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (!cfg.out_dir.empty()) write_outputs(r, cfg.out_dir);
  return r;
}

// --- outputs -------------------------------------------------------------------------------

namespace {

void write_file(const fs::path& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIo, "cannot write " + path.string());
  out << contents;
  if (!out) throw Error(ErrorCode::kIo, "write failed for " + path.string());
}

Document read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  try {
    return Document::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::kIo, path.string() + ": " + e.what());
  }
}

}  // namespace

std::string chain_jsonl(const Blockchain& chain) {
  std::string out;
  for (const Block& b : chain.blocks()) {
    out += block_to_json(b).dump();
    out += '\n';
  }
  return out;
}

Document summary_json(const ScenarioResult& r) {
  // The output location is not part of the scenario; leaving it out keeps
  // summaries of identical runs identical wherever they were written.
  Document config = config_to_json(r.config);
  config.erase("out_dir");
  Document violations = Document::array();
  for (const ConvergenceReport& v : r.violations)
    violations.push_back({{"period", v.period}, {"problems", v.problems}});
  return {
      {"schema", "leochain.summary/1"},
      {"config", std::move(config)},
      {"metrics", metrics_json(r.metrics)},
      {"transactions",
       {{"submitted", r.submitted}, {"committed", r.committed}, {"rejected", r.rejected}}},
      {"convergence", {{"checks", r.convergence_checks}, {"violations", std::move(violations)}}},
      {"leader_changes_while_member", r.leader_changes_while_member},
      {"balances", {{"created", r.created_balance}, {"final", r.final_balance}}},
      {"final",
       {{"height", r.final_height}, {"head", r.final_head.hex()}, {"state", r.final_state.hex()}}},
  };
}

void write_outputs(const ScenarioResult& r, const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIo, "cannot create " + dir.string() + ": " + ec.message());
  write_file(dir / "summary.json", summary_json(r).dump(2) + "\n");
  write_file(dir / "metrics.csv", metrics_csv(r.metrics));
  std::ostringstream trace;
  r.sim->network().write_trace(trace);
  write_file(dir / "trace.jsonl", trace.str());
  const std::vector<const Replica*> members = r.sim->member_replicas();
  const Replica* rep = members.empty() ? &r.sim->replica(GridCoord{}) : members.front();
  write_file(dir / "chain.jsonl", chain_jsonl(rep->chain()));
  write_file(dir / "state.json", state_to_json(rep->state()).dump(2) + "\n");
}

// --- sweep ----------------------------------------------------------------------------------

std::vector<int32_t> parse_k_range(const std::string& text) {
  std::vector<int32_t> ks;
  auto parse_int = [&](const std::string& s) {
    size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty()) throw ConfigError("k range: cannot parse '" + text + "'");
    return static_cast<int32_t>(v);
  };
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int32_t lo = parse_int(text.substr(0, dots));
    const int32_t hi = parse_int(text.substr(dots + 2));
    if (lo > hi) throw ConfigError("k range: empty range '" + text + "'");
    for (int32_t k = lo; k <= hi; ++k) ks.push_back(k);
  } else {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) ks.push_back(parse_int(item));
  }
  if (ks.empty()) throw ConfigError("k range: no values in '" + text + "'");
  for (int32_t k : ks)
    if (k < 1) throw ConfigError("k range: slot widths must be >= 1");
  return ks;
}

SweepResult run_sweep(const ScenarioConfig& cfg, const std::vector<int32_t>& ks) {
  std::vector<ScenarioConfig> configs;
  for (int32_t k : ks) {
    ScenarioConfig c = cfg;
    c.sa.slot_width = k;
    if (!cfg.out_dir.empty()) c.out_dir = (fs::path(cfg.out_dir) / ("k" + std::to_string(k))).string();
    // Validate every point before starting any of them.
    config_from_json(config_to_json(c));
    configs.push_back(std::move(c));
  }
  auto run_point = [](const ScenarioConfig& c) {
    ScenarioResult r = run_scenario(c);
    SweepPoint p;
    p.k = c.sa.slot_width;
    p.sa_nodes = c.sa.slot_width * c.sa.plane_count();
    p.metrics = r.metrics;
    p.committed = r.committed;
    p.convergence_violations = r.violations.size();
    p.wall_seconds = r.wall_seconds;
    return p;
  };
  // No more runs in flight than cores, so each point's wall time is its own.
  const size_t lanes = std::max(1u, std::thread::hardware_concurrency());
  SweepResult s;
  s.points.resize(configs.size());
  for (size_t first = 0; first < configs.size(); first += lanes) {
    std::vector<std::future<SweepPoint>> futures;
    const size_t last = std::min(configs.size(), first + lanes);
    for (size_t i = first; i < last; ++i)
      futures.push_back(std::async(std::launch::async, run_point, std::cref(configs[i])));
    for (size_t i = first; i < last; ++i) s.points[i] = futures[i - first].get();
  }
  if (s.points.size() >= 2) {
    std::vector<double> x, total, gossip, commits;
    for (const SweepPoint& p : s.points) {
      x.push_back(p.sa_nodes);
      total.push_back(static_cast<double>(p.metrics.total_messages()));
      gossip.push_back(static_cast<double>(p.metrics.total(MessageKind::kGossip)));
      commits.push_back(static_cast<double>(p.metrics.commits));
    }
    s.total_fit = linear_fit(x, total);
    s.gossip_fit = linear_fit(x, gossip);
    s.commits_fit = linear_fit(x, commits);
  }
  if (!cfg.out_dir.empty()) {
    fs::create_directories(cfg.out_dir);
    write_file(fs::path(cfg.out_dir) / "sweep.json", sweep_json(s).dump(2) + "\n");
  }
  return s;
}

Document sweep_json(const SweepResult& s) {
  Document points = Document::array();
  for (const SweepPoint& p : s.points) {
    Document totals = Document::object();
    for (MessageKind k : kAllMessageKinds) totals[to_string(k)] = p.metrics.total(k);
    points.push_back({{"k", p.k},
                      {"sa_nodes", p.sa_nodes},
                      {"total_messages", p.metrics.total_messages()},
                      {"totals", std::move(totals)},
                      {"commits", p.metrics.commits},
                      {"migrations", p.metrics.migrations},
                      {"transactions_committed", p.committed},
                      {"convergence_violations", p.convergence_violations}});
  }
  auto fit = [](const LinearFit& f) {
    return Document{{"slope", f.slope}, {"intercept", f.intercept}, {"r_squared", f.r_squared}};
  };
  return {{"schema", "leochain.sweep/1"},
          {"points", std::move(points)},
          {"fits",
           {{"total_messages", fit(s.total_fit)},
            {"gossip", fit(s.gossip_fit)},
            {"commits", fit(s.commits_fit)}}}};
}

// --- report ---------------------------------------------------------------------------------

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string sweep_report(const fs::path& dir, const Document& sweep) {
  std::ostringstream txt, points_csv, fit_csv;
  points_csv << "k,sa_nodes,total_messages,gossip,commits,migrations\n";
  txt << "Sweep over service-area width\n\n";
  txt << "    K  SA nodes  total msgs      gossip     commits  migrations\n";
  for (const auto& p : sweep.at("points")) {
    char line[160];
    std::snprintf(line, sizeof line, "%5d  %8d  %10" PRIu64 "  %10" PRIu64 "  %10" PRIu64 "  %10" PRIu64 "\n",
                  p.at("k").get<int>(), p.at("sa_nodes").get<int>(),
                  p.at("total_messages").get<uint64_t>(), p.at("totals").at("gossip").get<uint64_t>(),
                  p.at("commits").get<uint64_t>(), p.at("migrations").get<uint64_t>());
    txt << line;
    points_csv << p.at("k").get<int>() << ',' << p.at("sa_nodes").get<int>() << ','
               << p.at("total_messages").get<uint64_t>() << ','
               << p.at("totals").at("gossip").get<uint64_t>() << ','
               << p.at("commits").get<uint64_t>() << ',' << p.at("migrations").get<uint64_t>() << '\n';
  }
  txt << "\nLinear fit against SA node count\n\n";
  txt << "  series          slope       intercept   R^2\n";
  fit_csv << "series,slope,intercept,r_squared\n";
  for (const char* series : {"total_messages", "gossip", "commits"}) {
    const Document& f = sweep.at("fits").at(series);
    char line[160];
    std::snprintf(line, sizeof line, "  %-14s  %10.4f  %10.4f  %.6f\n", series, f.at("slope").get<double>(),
                  f.at("intercept").get<double>(), f.at("r_squared").get<double>());
    txt << line;
    fit_csv << series << ',' << fmt("%.6f", f.at("slope").get<double>()) << ','
            << fmt("%.6f", f.at("intercept").get<double>()) << ','
            << fmt("%.6f", f.at("r_squared").get<double>()) << '\n';
  }
  write_file(dir / "sweep_points.csv", points_csv.str());
  write_file(dir / "fit.csv", fit_csv.str());
  Document report = {{"schema", "leochain.report/1"}, {"kind", "sweep"},
                     {"points", sweep.at("points")}, {"fits", sweep.at("fits")}};
  write_file(dir / "report.json", report.dump(2) + "\n");
  return txt.str();
}

std::string run_report(const fs::path& dir, const Document& summary) {
  const Document& m = summary.at("metrics");
  std::ostringstream txt, props_csv, plane_csv, slot_csv;
  txt << "Message proportions\n\n";
  txt << "  kind                      count   share\n";
  props_csv << "kind,count,percent\n";
  const uint64_t total = m.at("total_messages").get<uint64_t>();
  for (MessageKind k : kAllMessageKinds) {
    const char* name = to_string(k);
    const uint64_t count = m.at("totals").at(name).get<uint64_t>();
    const int pct = m.at("proportions").is_null() ? 0 : m.at("proportions").at(name).get<int>();
    char line[128];
    std::snprintf(line, sizeof line, "  %-22s  %9" PRIu64 "   %3d%%\n", name, count, pct);
    txt << line;
    props_csv << name << ',' << count << ',' << pct << '\n';
  }
  txt << "  total                   " << fmt("%9.0f", static_cast<double>(total)) << "\n\n";
  const Document& g = m.at("distribution").at("gossip");
  txt << "Gossip by plane (sent / delivered)\n\n";
  plane_csv << "plane,gossip_sent,gossip_delivered\n";
  for (size_t i = 0; i < g.at("plane_sent").size(); ++i) {
    txt << "  plane " << i << ": " << g.at("plane_sent")[i].get<uint64_t>() << " / "
        << g.at("plane_delivered")[i].get<uint64_t>() << "\n";
    plane_csv << i << ',' << g.at("plane_sent")[i].get<uint64_t>() << ','
              << g.at("plane_delivered")[i].get<uint64_t>() << '\n';
  }
  slot_csv << "slot,gossip_sent,gossip_delivered\n";
  for (size_t i = 0; i < g.at("slot_sent").size(); ++i)
    slot_csv << i << ',' << g.at("slot_sent")[i].get<uint64_t>() << ','
             << g.at("slot_delivered")[i].get<uint64_t>() << '\n';
  const Document& tx = summary.at("transactions");
  txt << "\nTransactions: " << tx.at("submitted").get<uint64_t>() << " submitted, "
      << tx.at("committed").get<uint64_t>() << " committed, " << tx.at("rejected").get<uint64_t>()
      << " rejected\n";
  txt << "Commits: " << m.at("commits").get<uint64_t>() << "  Migrations: "
      << m.at("migrations").get<uint64_t>() << "  Periods: " << m.at("periods_elapsed").get<int64_t>()
      << "  Cycles: " << m.at("cycles_elapsed").get<int64_t>() << "\n";
  txt << "Convergence: " << summary.at("convergence").at("checks").get<uint64_t>() << " checks, "
      << summary.at("convergence").at("violations").size() << " violations\n";
  write_file(dir / "proportions.csv", props_csv.str());
  write_file(dir / "distribution_plane.csv", plane_csv.str());
  write_file(dir / "distribution_slot.csv", slot_csv.str());
  Document report = {{"schema", "leochain.report/1"},
                     {"kind", "run"},
                     {"totals", m.at("totals")},
                     {"total_messages", total},
                     {"proportions", m.at("proportions")},
                     {"distribution", m.at("distribution")},
                     {"transactions", tx},
                     {"commits", m.at("commits")},
                     {"migrations", m.at("migrations")}};
  write_file(dir / "report.json", report.dump(2) + "\n");
  return txt.str();
}

}  // namespace

std::string write_report(const fs::path& dir) {
  std::string text;
  try {
    if (fs::exists(dir / "sweep.json")) {
      text = sweep_report(dir, read_json(dir / "sweep.json"));
    } else if (fs::exists(dir / "summary.json")) {
      text = run_report(dir, read_json(dir / "summary.json"));
    } else {
      throw Error(ErrorCode::kNotFound, "no summary.json or sweep.json in " + dir.string());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, "malformed run output in " + dir.string() + ": " + e.what());
  }
  write_file(dir / "report.txt", text);
  return text;
}

}  // namespace leochain
