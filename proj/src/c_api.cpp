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

#include "leochain.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <string>

#include "leochain/control_api.hpp"
#include "leochain/errors.hpp"
#include "leochain/scenario.hpp"

struct leo_sim {
  std::unique_ptr<leochain::Session> session;
};

struct leo_server {
  std::shared_ptr<leochain::Session> session;
  std::unique_ptr<leochain::ControlServer> server;
};

namespace {

using leochain::Document;

thread_local std::string g_last_error;

leo_status fail(leo_status s, std::string message) {
  g_last_error = std::move(message);
  return s;
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void give(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

/// Runs `fn`, translating exceptions into status codes.
template <typename Fn>
leo_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    return fn();
  } catch (const leochain::Error& e) {
    return fail(static_cast<leo_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return fail(LEO_ERR_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LEO_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LEO_ERR_INTERNAL, e.what());
  }
}

leochain::ScenarioConfig parse_config(const char* text) {
  if (!text) throw leochain::ConfigError("config document is NULL");
  Document doc;
  try {
    doc = Document::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw leochain::ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  return leochain::config_from_json(doc);
}

Document parse_document(const char* text, const char* what) {
  if (!text) throw leochain::Error(leochain::ErrorCode::kInvalidArgument, std::string(what) + " is NULL");
  try {
    return Document::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw leochain::Error(leochain::ErrorCode::kInvalidArgument,
                          std::string(what) + " is not valid JSON: " + e.what());
  }
}

/// Maps an API response onto a status, always handing back the document.
leo_status respond(const leochain::ApiResponse& r, char** out) {
  give(out, r.body.dump());
  switch (r.status) {
    case 200:
    case 201: return LEO_OK;
    case 404: return fail(LEO_ERR_NOT_FOUND, r.body.value("error", std::string("not found")));
    case 422: return fail(LEO_ERR_EXECUTION, r.body.value("reason", std::string("execution failed")));
    case 400: return fail(LEO_ERR_INVALID_ARGUMENT, r.body.dump());
    default: return fail(LEO_ERR_INTERNAL, r.body.dump());
  }
}

}  // namespace

extern "C" {

const char* leo_version(void) { return "1.0.0"; }

const char* leo_last_error(void) { return g_last_error.c_str(); }

const char* leo_status_name(leo_status s) {
  switch (s) {
    case LEO_OK: return "ok";
    case LEO_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case LEO_ERR_CONFIG: return "config";
    case LEO_ERR_INVARIANT: return "invariant";
    case LEO_ERR_NOT_FOUND: return "not_found";
    case LEO_ERR_PROTOCOL: return "protocol";
    case LEO_ERR_EXECUTION: return "execution";
    case LEO_ERR_CORRUPTION: return "corruption";
    case LEO_ERR_IO: return "io";
    case LEO_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void leo_string_free(char* s) { std::free(s); }

leo_status leo_config_normalize(const char* config_json, char** normalized_out) {
  return guarded([&] {
    give(normalized_out, leochain::config_to_json(parse_config(config_json)).dump(2));
    return LEO_OK;
  });
}

leo_status leo_sim_create(const char* config_json, leo_sim** out) {
  if (!out) return fail(LEO_ERR_INVALID_ARGUMENT, "out handle is NULL");
  *out = nullptr;
  return guarded([&] {
    auto sim = std::make_unique<leo_sim>();
    sim->session = std::make_unique<leochain::Session>(parse_config(config_json));
    *out = sim.release();
    return LEO_OK;
  });
}

void leo_sim_destroy(leo_sim* sim) { delete sim; }

leo_status leo_sim_step(leo_sim* sim, int with_workload, int64_t* period_out) {
  if (!sim) return fail(LEO_ERR_INVALID_ARGUMENT, "sim handle is NULL");
  return guarded([&] {
    const auto r = sim->session->step(Document{{"workload", with_workload != 0}});
    if (period_out) *period_out = r.body.value("period", int64_t{0});
    return respond(r, nullptr);
  });
}

leo_status leo_sim_submit(leo_sim* sim, const char* invocation_json, char** response_out) {
  if (!sim) return fail(LEO_ERR_INVALID_ARGUMENT, "sim handle is NULL");
  return guarded([&] { return respond(sim->session->submit(parse_document(invocation_json, "invocation")), response_out); });
}

leo_status leo_sim_tx_status(leo_sim* sim, const char* tx_id, char** response_out) {
  if (!sim || !tx_id) return fail(LEO_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { return respond(sim->session->transaction(tx_id), response_out); });
}

leo_status leo_sim_read_state(leo_sim* sim, const char* key, size_t r, char** response_out) {
  if (!sim || !key) return fail(LEO_ERR_INVALID_ARGUMENT, "NULL argument");
  return guarded([&] { return respond(sim->session->state(key, std::to_string(r)), response_out); });
}

leo_status leo_sim_grid(leo_sim* sim, char** response_out) {
  if (!sim) return fail(LEO_ERR_INVALID_ARGUMENT, "sim handle is NULL");
  return guarded([&] { return respond(sim->session->grid(), response_out); });
}

leo_status leo_sim_metrics(leo_sim* sim, char** response_out) {
  if (!sim) return fail(LEO_ERR_INVALID_ARGUMENT, "sim handle is NULL");
  return guarded([&] { return respond(sim->session->metrics(), response_out); });
}

leo_status leo_sim_convergence(leo_sim* sim, char** response_out) {
  if (!sim) return fail(LEO_ERR_INVALID_ARGUMENT, "sim handle is NULL");
  return guarded([&] { return respond(sim->session->convergence(), response_out); });
}

leo_status leo_run_scenario(const char* config_json, const char* out_dir, char** summary_out) {
  return guarded([&] {
    leochain::ScenarioConfig cfg = parse_config(config_json);
    if (out_dir) cfg.out_dir = out_dir;
    const leochain::ScenarioResult r = leochain::run_scenario(cfg);
    give(summary_out, leochain::summary_json(r).dump(2));
    if (!r.violations.empty())
      return fail(LEO_ERR_INVARIANT, std::to_string(r.violations.size()) +
                                         " convergence violations; first at period " +
                                         std::to_string(r.violations.front().period));
    return LEO_OK;
  });
}

leo_status leo_run_sweep(const char* config_json, const char* k_range, const char* out_dir,
                         char** sweep_out) {
  return guarded([&] {
    leochain::ScenarioConfig cfg = parse_config(config_json);
    if (out_dir) cfg.out_dir = out_dir;
    const auto ks = leochain::parse_k_range(k_range ? k_range : "5..10");
    const leochain::SweepResult s = leochain::run_sweep(cfg, ks);
    give(sweep_out, leochain::sweep_json(s).dump(2));
    for (const auto& p : s.points)
      if (p.convergence_violations)
        return fail(LEO_ERR_INVARIANT, "convergence violations at K=" + std::to_string(p.k));
    return LEO_OK;
  });
}

leo_status leo_report(const char* in_dir, char** text_out) {
  if (!in_dir) return fail(LEO_ERR_INVALID_ARGUMENT, "input directory is NULL");
  return guarded([&] {
    give(text_out, leochain::write_report(in_dir));
    return LEO_OK;
  });
}

leo_status leo_server_start(const char* config_json, const char* host, int port,
                            const char* cors_origin, const char* static_dir, leo_server** out) {
  if (!out) return fail(LEO_ERR_INVALID_ARGUMENT, "out handle is NULL");
  *out = nullptr;
  return guarded([&] {
    leochain::ServerOptions opts = leochain::server_options_from_env({});
    if (host) opts.host = host;
    if (port >= 0) opts.port = port;
    if (cors_origin) opts.cors_origin = cors_origin;
    if (static_dir) opts.static_dir = static_dir;
    auto srv = std::make_unique<leo_server>();
    srv->session = std::make_shared<leochain::Session>(parse_config(config_json));
    srv->server = std::make_unique<leochain::ControlServer>(srv->session, opts);
    srv->server->start();
    *out = srv.release();
    return LEO_OK;
  });
}

int leo_server_port(const leo_server* server) { return server ? server->server->port() : -1; }

void leo_server_wait(leo_server* server) {
  if (server) server->server->wait();
}

void leo_server_stop(leo_server* server) {
  if (server) server->server->stop();
}

void leo_server_destroy(leo_server* server) {
  if (!server) return;
  server->server->stop();
  delete server;
}

}  // extern "C"
