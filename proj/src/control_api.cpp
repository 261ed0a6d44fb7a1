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

#include "leochain/control_api.hpp"

#include <cstdlib>
#include <sstream>

#include <httplib.h>

#include "leochain/contracts.hpp"
#include "leochain/errors.hpp"

namespace leochain {

// --- events ---------------------------------------------------------------------------

namespace {
constexpr size_t kBacklog = 512;
}

void EventHub::publish(const std::string& type, const Document& data) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    backlog_.push_back(Event{next_id_++, type, data.dump()});
    while (backlog_.size() > kBacklog) backlog_.pop_front();
  }
  cv_.notify_all();
}

std::vector<EventHub::Event> EventHub::wait_after(uint64_t after, std::chrono::milliseconds timeout) {
  std::unique_lock<std::mutex> lock(mu_);
  cv_.wait_for(lock, timeout, [&] { return closed_ || (!backlog_.empty() && backlog_.back().id > after); });
  std::vector<Event> out;
  for (const Event& e : backlog_)
    if (e.id > after) out.push_back(e);
  return out;
}

uint64_t EventHub::last_id() const {
  std::lock_guard<std::mutex> lock(mu_);
  return next_id_ - 1;
}

void EventHub::close() {
  {
    std::lock_guard<std::mutex> lock(mu_);
    closed_ = true;
  }
  cv_.notify_all();
}

bool EventHub::closed() const {
  std::lock_guard<std::mutex> lock(mu_);
  return closed_;
}

// --- session ---------------------------------------------------------------------------

namespace {

Document coord_json(const GridCoord& c) { return Document::array({c.plane, c.slot}); }

std::vector<std::string> split_lines(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string line;
  while (std::getline(ss, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

Document error_body(const std::string& message, std::vector<std::string> details = {}) {
  Document d = {{"error", message}};
  if (!details.empty()) d["errors"] = std::move(details);
  return d;
}

/// Marks a step in progress for the lifetime of the guard.
class SteppingGuard {
 public:
  explicit SteppingGuard(std::atomic<bool>& flag) : flag_(flag) { flag_ = true; }
  ~SteppingGuard() { flag_ = false; }

 private:
  std::atomic<bool>& flag_;
};

}  // namespace

Session::Session(const ScenarioConfig& cfg)
    : cfg_(cfg), sim_(std::make_unique<Simulation>(cfg.simulation_options())) {
  sim_->set_commit_observer([this](const CommitEvent& e) {
    Document d = {{"tx_id", e.id}, {"status", e.committed ? "committed" : "rejected"}};
    if (e.seq) d["seq"] = e.seq;
    if (e.committed) d["height"] = e.height;
    if (!e.reason.empty()) d["reason"] = e.reason;
    d["seed"] = seed();
    d["period"] = period_.load();
    hub_.publish("commit", d);
  });
}

Session::~Session() { shutdown(); }

void Session::shutdown() {
  {
    std::lock_guard<std::mutex> lock(auto_mu_);
    stop_auto_ = true;
  }
  auto_cv_.notify_all();
  if (auto_thread_.joinable()) auto_thread_.join();
  auto_ = false;
  hub_.close();
}

ApiResponse Session::stamp(int status, Document body) const {
  body["seed"] = cfg_.seed;
  body["period"] = period_.load();
  return ApiResponse{status, std::move(body)};
}

ApiResponse Session::busy() const { return stamp(503, error_body("a step is executing; retry shortly")); }

ApiResponse Session::grid() {
  if (stepping_) return busy();
  std::lock_guard<std::mutex> lock(mu_);
  const ServiceAreaWindow& w = sim_->window();
  Document nodes = Document::array();
  for (const NodeView& v : sim_->grid()) {
    nodes.push_back({{"coord", coord_json(v.coord)},
                     {"role", to_string(v.role)},
                     {"responsive", v.responsive},
                     {"height", v.height},
                     {"head", v.head.hex()},
                     {"state_digest", v.state.hex()}});
  }
  const auto leader = sim_->leader();
  return stamp(200, {{"planes", sim_->topology().planes()},
                     {"slots_per_plane", sim_->topology().slots_per_plane()},
                     {"leader_row_plane", sim_->options().leader_row_plane},
                     {"leader", leader ? coord_json(*leader) : Document()},
                     {"window",
                      {{"west_slot", w.west_slot()},
                       {"east_slot", w.east_slot()},
                       {"width", w.width()},
                       {"plane_first", w.plane_first()},
                       {"plane_count", w.plane_count()},
                       {"size", w.size()}}},
                     {"nodes", std::move(nodes)}});
}

ApiResponse Session::step(const Document& body) {
  if (auto_) return stamp(409, error_body("auto-advance is enabled; switch to paused to step manually"));
  bool workload = false;
  if (body.is_object() && body.contains("workload")) {
    if (!body.at("workload").is_boolean())
      return stamp(400, error_body("invalid step request", {"workload: expected true or false"}));
    workload = body.at("workload").get<bool>();
  } else if (!body.is_null() && !body.is_object()) {
    return stamp(400, error_body("step body must be an object"));
  }
  return do_step(workload);
}

ApiResponse Session::do_step(bool workload) {
  std::lock_guard<std::mutex> lock(mu_);
  SteppingGuard guard(stepping_);
  std::vector<TxId> submitted;
  if (workload) {
    const GridCoord submitter = workload_submitter(cfg_.submitter, *sim_);
    std::vector<TxId> fresh;
    for (int64_t b : cfg_.workload.create_balances) fresh.push_back(sim_->submit(account_create(b), submitter));
    sim_->settle();
    if (cfg_.workload.transfer_amount != 0 && fresh.size() >= 2)
      submitted.push_back(sim_->submit(
          account_transfer(fresh_key_for(fresh[0]), fresh_key_for(fresh[1]), cfg_.workload.transfer_amount),
          submitter));
    submitted.insert(submitted.begin(), fresh.begin(), fresh.end());
  }
  const MigrationPlan plan = sim_->advance_period();
  period_ = sim_->period();
  const ConvergenceReport conv = sim_->check_convergence();
  const auto leader = sim_->leader();
  Document ev = {{"period", period_.load()},
                 {"seed", cfg_.seed},
                 {"leader", leader ? coord_json(*leader) : Document()},
                 {"syncs", plan.syncs.size()},
                 {"handover", plan.handover.has_value()},
                 {"converged", conv.converged}};
  hub_.publish("period", ev);
  return stamp(200, {{"leader", ev["leader"]},
                     {"syncs", plan.syncs.size()},
                     {"handover", plan.handover.has_value()},
                     {"converged", conv.converged},
                     {"submitted", submitted}});
}

ApiResponse Session::submit(const Document& body) {
  ContractInvocation inv;
  std::optional<GridCoord> submitter;
  std::vector<std::string> problems;
  try {
    inv = invocation_from_json(body);
  } catch (const InvocationError& e) {
    problems = split_lines(e.what());
  }
  if (body.is_object() && body.contains("submitter") && !body.at("submitter").is_null()) {
    const Document& s = body.at("submitter");
    if (s.is_array() && s.size() == 2 && s[0].is_number_integer() && s[1].is_number_integer()) {
      const GridCoord c{s[0].get<int32_t>(), s[1].get<int32_t>()};
      if (sim_->topology().contains(c))
        submitter = c;
      else
        problems.push_back("submitter: " + to_string(c) + " is outside the grid");
    } else {
      problems.push_back("submitter: expected [plane, slot]");
    }
  }
  if (problems.empty()) {
    try {
      sim_->registry().bind_arguments(inv);
    } catch (const InvocationError& e) {
      problems = split_lines(e.what());
    }
  }
  if (!problems.empty()) return stamp(400, error_body("invalid invocation", std::move(problems)));

  std::lock_guard<std::mutex> lock(mu_);
  const GridCoord at = submitter ? *submitter : sim_->random_outside_node();
  const TxId id = sim_->submit(inv, at);
  sim_->settle();
  const StatusReport st = sim_->query_status(id);
  Document out = {{"tx_id", id}, {"status", to_string(st.status)}, {"submitter", coord_json(at)}};
  if (st.seq) out["seq"] = *st.seq;
  if (st.height) out["height"] = *st.height;
  if (inv.contract == AccountContract::kName && inv.op == "create") out["account"] = fresh_key_for(id);
  if (st.status == TxStatus::kRejected) {
    out["reason"] = st.reason;
    out["error"] = "contract execution failed";
    return stamp(422, std::move(out));
  }
  return stamp(201, std::move(out));
}

ApiResponse Session::transaction(const std::string& id) {
  if (stepping_) return busy();
  std::lock_guard<std::mutex> lock(mu_);
  const StatusReport st = sim_->query_status(id);
  Document out = {{"tx_id", id}, {"status", to_string(st.status)}};
  if (st.seq) out["seq"] = *st.seq;
  if (st.height) out["height"] = *st.height;
  if (!st.reason.empty()) out["reason"] = st.reason;
  return stamp(200, std::move(out));
}

ApiResponse Session::state(const std::string& key, const std::optional<std::string>& r_text) {
  if (stepping_) return busy();
  std::lock_guard<std::mutex> lock(mu_);
  const size_t members = sim_->member_replicas().size();
  size_t r = 1;
  if (r_text) {
    char* end = nullptr;
    const long long v = std::strtoll(r_text->c_str(), &end, 10);
    if (r_text->empty() || *end != '\0' || v < 1 || static_cast<size_t>(v) > members)
      return stamp(400, error_body("invalid read quorum",
                                   {"r: expected an integer in [1, " + std::to_string(members) + "]"}));
    r = static_cast<size_t>(v);
  }
  const QuorumReadResult res = sim_->read_state(key, r);
  if (!res.entry)
    return stamp(404, {{"key", key}, {"error", "key not found"}, {"replicas_read", res.replicas_read}});
  return stamp(200, {{"key", key},
                     {"value", res.entry->value},
                     {"version", res.entry->version},
                     {"last_block", res.entry->last_block},
                     {"replicas_read", res.replicas_read}});
}

ApiResponse Session::metrics() {
  if (stepping_) return busy();
  std::lock_guard<std::mutex> lock(mu_);
  return stamp(200, metrics_json(sim_->metrics().snapshot()));
}

ApiResponse Session::convergence() {
  if (stepping_) return busy();
  std::lock_guard<std::mutex> lock(mu_);
  const ConvergenceReport c = sim_->check_convergence();
  return stamp(200, {{"converged", c.converged},
                     {"height", c.height},
                     {"head", c.head.hex()},
                     {"state_digest", c.state.hex()},
                     {"problems", c.problems}});
}

ApiResponse Session::mode() {
  return stamp(200, {{"mode", auto_ ? "auto" : "paused"}, {"interval_ms", interval_.count()}});
}

ApiResponse Session::set_mode(const Document& body) {
  std::vector<std::string> problems;
  std::string m;
  if (!body.is_object() || !body.contains("mode") || !body.at("mode").is_string()) {
    problems.push_back("mode: required, \"paused\" or \"auto\"");
  } else {
    m = body.at("mode").get<std::string>();
    if (m != "paused" && m != "auto") problems.push_back("mode: expected \"paused\" or \"auto\"");
  }
  std::optional<int64_t> interval;
  if (body.is_object() && body.contains("interval_ms")) {
    if (!body.at("interval_ms").is_number_integer() || body.at("interval_ms").get<int64_t>() < 10)
      problems.push_back("interval_ms: expected an integer >= 10");
    else
      interval = body.at("interval_ms").get<int64_t>();
  }
  if (!problems.empty()) return stamp(400, error_body("invalid mode request", std::move(problems)));

  // Always stop the current loop first; a mode change restarts it cleanly.
  {
    std::lock_guard<std::mutex> lock(auto_mu_);
    stop_auto_ = true;
  }
  auto_cv_.notify_all();
  if (auto_thread_.joinable()) auto_thread_.join();
  auto_ = false;
  if (interval) interval_ = std::chrono::milliseconds(*interval);
  if (m == "auto") {
    {
      std::lock_guard<std::mutex> lock(auto_mu_);
      stop_auto_ = false;
    }
    auto_ = true;
    auto_thread_ = std::thread([this] { auto_loop(); });
  }
  hub_.publish("mode", {{"mode", m}, {"interval_ms", interval_.count()}, {"seed", cfg_.seed}});
  return mode();
}

void Session::auto_loop() {
  std::unique_lock<std::mutex> lock(auto_mu_);
  for (;;) {
    if (auto_cv_.wait_for(lock, interval_, [this] { return stop_auto_; })) return;
    lock.unlock();
    try {
      do_step(false);
    } catch (const std::exception& e) {
      hub_.publish("error", {{"error", e.what()}, {"seed", cfg_.seed}, {"period", period_.load()}});
      auto_ = false;
      return;
    }
    lock.lock();
  }
}

// --- HTTP ---------------------------------------------------------------------------------

ServerOptions server_options_from_env(ServerOptions base) {
  if (const char* h = std::getenv("LEOCHAIN_HOST"); h && *h) base.host = h;
  if (const char* p = std::getenv("LEOCHAIN_PORT"); p && *p) base.port = std::atoi(p);
  if (const char* o = std::getenv("LEOCHAIN_CORS_ORIGIN"); o && *o) base.cors_origin = o;
  return base;
}

struct ControlServer::Impl {
  std::shared_ptr<Session> session;
  ServerOptions options;
  httplib::Server server;
  std::thread thread;
};

namespace {

void send(httplib::Response& res, const ApiResponse& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

int status_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::kInvalidArgument:
    case ErrorCode::kConfig: return 400;
    case ErrorCode::kNotFound: return 404;
    case ErrorCode::kExecution: return 422;
    default: return 500;
  }
}

/// Parses a JSON request body; an empty body is null.
std::optional<Document> parse_body(const httplib::Request& req) {
  if (req.body.empty()) return Document();
  try {
    return Document::parse(req.body);
  } catch (const nlohmann::json::parse_error&) {
    return std::nullopt;
  }
}

}  // namespace

ControlServer::ControlServer(std::shared_ptr<Session> session, ServerOptions options)
    : impl_(std::make_unique<Impl>()) {
  impl_->session = std::move(session);
  impl_->options = std::move(options);
}

ControlServer::~ControlServer() { stop(); }

void ControlServer::start() {
  auto& svr = impl_->server;
  auto session = impl_->session;
  const std::string origin = impl_->options.cors_origin;

  auto guarded = [session](auto fn) {
    return [session, fn](const httplib::Request& req, httplib::Response& res) {
      try {
        send(res, fn(req));
      } catch (const Error& e) {
        Document body = {{"error", e.what()}, {"seed", session->seed()}};
        send(res, ApiResponse{status_for(e), std::move(body)});
      } catch (const std::exception& e) {
        Document body = {{"error", std::string("internal error: ") + e.what()}, {"seed", session->seed()}};
        send(res, ApiResponse{500, std::move(body)});
      }
    };
  };
  auto with_body = [session](auto fn) {
    return [session, fn](const httplib::Request& req) {
      auto body = parse_body(req);
      if (!body) return ApiResponse{400, {{"error", "request body is not valid JSON"}, {"seed", session->seed()}}};
      return fn(*body);
    };
  };

  svr.set_post_routing_handler([origin](const httplib::Request&, httplib::Response& res) {
    res.set_header("Access-Control-Allow-Origin", origin);
    res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
    res.set_header("Access-Control-Allow-Headers", "Content-Type, Last-Event-ID");
  });
  svr.Options(R"(/v1/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

  svr.Get("/v1/grid", guarded([session](const httplib::Request&) { return session->grid(); }));
  svr.Post("/v1/step", guarded(with_body([session](const Document& b) { return session->step(b); })));
  svr.Post("/v1/transactions",
           guarded(with_body([session](const Document& b) { return session->submit(b); })));
  svr.Get(R"(/v1/transactions/([^/]+))", guarded([session](const httplib::Request& req) {
            return session->transaction(req.matches[1]);
          }));
  svr.Get(R"(/v1/state/(.+))", guarded([session](const httplib::Request& req) {
            std::optional<std::string> r;
            if (req.has_param("r")) r = req.get_param_value("r");
            return session->state(req.matches[1], r);
          }));
  svr.Get("/v1/metrics", guarded([session](const httplib::Request&) { return session->metrics(); }));
  svr.Get("/v1/convergence", guarded([session](const httplib::Request&) { return session->convergence(); }));
  svr.Get("/v1/mode", guarded([session](const httplib::Request&) { return session->mode(); }));
  svr.Post("/v1/mode", guarded(with_body([session](const Document& b) { return session->set_mode(b); })));

  svr.Get("/v1/events", [session](const httplib::Request& req, httplib::Response& res) {
    uint64_t last = session->events().last_id();
    if (req.has_header("Last-Event-ID")) last = std::strtoull(req.get_header_value("Last-Event-ID").c_str(), nullptr, 10);
    res.set_header("Cache-Control", "no-cache");
    res.set_chunked_content_provider("text/event-stream", [session, last](size_t, httplib::DataSink& sink) mutable {
      EventHub& hub = session->events();
      if (hub.closed()) {
        sink.done();
        return false;
      }
      const auto events = hub.wait_after(last, std::chrono::milliseconds(1000));
      std::string chunk;
      for (const auto& e : events) {
        chunk += "id: " + std::to_string(e.id) + "\nevent: " + e.type + "\ndata: " + e.data + "\n\n";
        last = e.id;
      }
      if (chunk.empty()) chunk = ": keepalive\n\n";
      return sink.write(chunk.data(), chunk.size());
    });
  });

  if (!impl_->options.static_dir.empty() && !svr.set_mount_point("/", impl_->options.static_dir))
    throw Error(ErrorCode::kIo, "static directory not found: " + impl_->options.static_dir);

  // httplib's defaults add SO_REUSEPORT, which would let a second server
  // share the port and split the traffic; keep only SO_REUSEADDR.
  svr.set_socket_options([](socket_t sock) {
    int yes = 1;
    setsockopt(sock, SOL_SOCKET, SO_REUSEADDR, reinterpret_cast<const char*>(&yes), sizeof(yes));
  });
  const auto& host = impl_->options.host;
  if (impl_->options.port == 0) {
    bound_port_ = svr.bind_to_any_port(host);
    if (bound_port_ <= 0) throw Error(ErrorCode::kIo, "cannot bind " + host);
  } else {
    if (!svr.bind_to_port(host, impl_->options.port))
      throw Error(ErrorCode::kIo, "cannot bind " + host + ":" + std::to_string(impl_->options.port));
    bound_port_ = impl_->options.port;
  }
  impl_->thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void ControlServer::stop() {
  if (!impl_) return;
  impl_->session->events().close();
  impl_->server.stop();
  if (impl_->thread.joinable()) impl_->thread.join();
}

void ControlServer::wait() {
  while (impl_->server.is_running()) std::this_thread::sleep_for(std::chrono::milliseconds(100));
}

}  // namespace leochain
