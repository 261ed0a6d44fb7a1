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

// Live, steppable session and its HTTP front end (/v1). Endpoint schemas
// are listed in README.md.

#pragma once

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <thread>

#include "leochain/ledger.hpp"
#include "leochain/scenario.hpp"
#include "leochain/simulation.hpp"

namespace leochain {

struct ApiResponse {
  int status = 200;
  Document body;
};

/// Bounded backlog of server-sent events.
class EventHub {
 public:
  struct Event {
    uint64_t id = 0;
    std::string type;
    std::string data;
  };

  void publish(const std::string& type, const Document& data);
  /// Events with id > `after`, waiting up to `timeout` for one to arrive.
  std::vector<Event> wait_after(uint64_t after, std::chrono::milliseconds timeout);
  uint64_t last_id() const;
  void close();
  bool closed() const;

 private:
  mutable std::mutex mu_;
  std::condition_variable cv_;
  std::deque<Event> backlog_;
  uint64_t next_id_ = 1;
  bool closed_ = false;
};

/// One simulation plus its command interface. Commands serialize on an
/// internal lock; reads issued while a step runs get 503.
class Session {
 public:
  explicit Session(const ScenarioConfig& cfg);
  ~Session();

  ApiResponse grid();
  /// Body (optional): {"workload": true} also submits the period workload.
  ApiResponse step(const Document& body);
  /// Body: {"contract", "op", "args", "submitter"?: [plane, slot]}.
  ApiResponse submit(const Document& body);
  ApiResponse transaction(const std::string& id);
  /// `r` is the raw query-string value (absent: 1).
  ApiResponse state(const std::string& key, const std::optional<std::string>& r);
  ApiResponse metrics();
  ApiResponse convergence();
  /// Body: {"mode": "paused" | "auto", "interval_ms"?: N}.
  ApiResponse set_mode(const Document& body);
  ApiResponse mode();

  EventHub& events() noexcept { return hub_; }
  uint64_t seed() const noexcept { return cfg_.seed; }
  bool auto_advancing() const noexcept { return auto_.load(); }

  /// Stops auto-advance and closes the event stream.
  void shutdown();

 private:
  ApiResponse stamp(int status, Document body) const;
  ApiResponse busy() const;
  ApiResponse do_step(bool workload);
  void auto_loop();

  ScenarioConfig cfg_;
  std::unique_ptr<Simulation> sim_;
  mutable std::mutex mu_;
  std::atomic<bool> stepping_{false};
  std::atomic<bool> auto_{false};
  std::atomic<int64_t> period_{0};
  std::chrono::milliseconds interval_{10000};
  std::mutex auto_mu_;
  std::condition_variable auto_cv_;
  std::thread auto_thread_;
  bool stop_auto_ = false;
  EventHub hub_;
};

struct ServerOptions {
  std::string host = "127.0.0.1";
  int port = 8080;  // 0 picks a free port
  std::string cors_origin = "http://localhost:5173";
  std::string static_dir;  // optional built UI
};

/// Host/port/CORS from LEOCHAIN_HOST, LEOCHAIN_PORT, LEOCHAIN_CORS_ORIGIN
/// over `base`.
ServerOptions server_options_from_env(ServerOptions base);

class ControlServer {
 public:
  ControlServer(std::shared_ptr<Session> session, ServerOptions options);
  ~ControlServer();

  /// Binds and serves on a background thread. Throws Error (kIo) when the
  /// address cannot be bound.
  void start();
  void stop();
  /// Blocks until stop() is called from elsewhere.
  void wait();
  int port() const noexcept { return bound_port_; }

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
  int bound_port_ = 0;
};

}  // namespace leochain
