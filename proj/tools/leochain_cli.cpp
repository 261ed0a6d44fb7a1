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

// leochain: scenario runner and control server.
//
//   leochain run --config FILE [--seed N] [--out DIR]
//   leochain sweep --config FILE [--k 5..10] [--seed N] [--out DIR]
//   leochain report --in DIR
//   leochain validate --config FILE
//   leochain serve [--config FILE] [--seed N] [--host H] [--port P]
//                  [--cors-origin O] [--static DIR]
//
// Exit codes: 0 success, 2 configuration error, 3 runtime invariant
// violation, 1 anything else (I/O, internal).

#include <atomic>
#include <chrono>
#include <csignal>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "leochain.h"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

int exit_code(leo_status s) {
  switch (s) {
    case LEO_OK: return 0;
    case LEO_ERR_CONFIG:
    case LEO_ERR_INVALID_ARGUMENT: return 2;
    case LEO_ERR_INVARIANT:
    case LEO_ERR_PROTOCOL:
    case LEO_ERR_CORRUPTION: return 3;
    default: return 1;
  }
}

int report_failure(leo_status s) {
  std::cerr << "leochain: " << leo_status_name(s) << " error: " << leo_last_error() << "\n";
  return exit_code(s);
}

/// Reads the config file and applies the --seed override. Returns nullopt
/// (after printing) when the file cannot be read or parsed.
std::optional<std::string> load(const std::string& path, std::optional<uint64_t> seed) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "leochain: config error: cannot open " << path << "\n";
    return std::nullopt;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  if (!seed) return buf.str();
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(buf.str());
  } catch (const nlohmann::json::parse_error& e) {
    std::cerr << "leochain: config error: " << path << ": " << e.what() << "\n";
    return std::nullopt;
  }
  if (!doc.is_object()) {
    std::cerr << "leochain: config error: " << path << ": expected an object\n";
    return std::nullopt;
  }
  doc["seed"] = *seed;
  return doc.dump();
}

/// Takes ownership of a library string.
std::string take(char* s) {
  std::string out = s ? s : "";
  leo_string_free(s);
  return out;
}

void print_run_summary(const std::string& summary_text) {
  const auto s = nlohmann::json::parse(summary_text);
  const auto& m = s.at("metrics");
  std::cout << "periods " << m.at("periods_elapsed") << ", cycles " << m.at("cycles_elapsed")
            << ", transactions committed " << s.at("transactions").at("committed")
            << ", commits " << m.at("commits") << ", migrations " << m.at("migrations") << "\n";
  std::cout << "messages " << m.at("total_messages");
  if (!m.at("proportions").is_null())
    for (const auto& [k, v] : m.at("proportions").items())
      if (v.get<int>() > 0) std::cout << ", " << k << " " << v.get<int>() << "%";
  std::cout << "\nconvergence violations " << s.at("convergence").at("violations").size() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LEO-constellation blockchain simulator"};
  app.require_subcommand(1);
  int code = 0;

  std::string config, out, in_dir, k_range = "5..10", host, cors, static_dir;
  std::optional<uint64_t> seed;
  int port = -1;

  auto* run = app.add_subcommand("run", "Run one scenario");
  run->add_option("--config", config, "Scenario config (JSON)")->required();
  run->add_option("--seed", seed, "Override the config seed");
  run->add_option("--out", out, "Output directory");

  auto* sweep = app.add_subcommand("sweep", "Run a scenario for a range of service-area widths");
  sweep->add_option("--config", config, "Scenario config (JSON)")->required();
  sweep->add_option("--k", k_range, "Slot widths, e.g. 5..10 or 5,7,9");
  sweep->add_option("--seed", seed, "Override the config seed");
  sweep->add_option("--out", out, "Output directory");

  auto* report = app.add_subcommand("report", "Summarize a run or sweep directory");
  report->add_option("--in", in_dir, "Directory written by run or sweep")->required();

  auto* validate = app.add_subcommand("validate", "Check a config and print it with defaults filled in");
  validate->add_option("--config", config, "Scenario config (JSON)")->required();

  auto* serve = app.add_subcommand("serve", "Serve the control API for a live session");
  serve->add_option("--config", config, "Scenario config (JSON); default: 28x4 demo grid, K=6");
  serve->add_option("--seed", seed, "Session seed (default 1 without --config)");
  serve->add_option("--host", host, "Bind address (env LEOCHAIN_HOST, default 127.0.0.1)");
  serve->add_option("--port", port, "Port (env LEOCHAIN_PORT, default 8080; 0 = any)");
  serve->add_option("--cors-origin", cors, "Allowed CORS origin (env LEOCHAIN_CORS_ORIGIN)");
  serve->add_option("--static", static_dir, "Serve a built UI from this directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  if (*run) {
    const auto text = load(config, seed);
    if (!text) return 2;
    char* summary = nullptr;
    const leo_status s = leo_run_scenario(text->c_str(), out.empty() ? nullptr : out.c_str(), &summary);
    const std::string summary_text = take(summary);
    if (!summary_text.empty()) print_run_summary(summary_text);
    code = s == LEO_OK ? 0 : report_failure(s);
  } else if (*sweep) {
    const auto text = load(config, seed);
    if (!text) return 2;
    char* result = nullptr;
    const leo_status s =
        leo_run_sweep(text->c_str(), k_range.c_str(), out.empty() ? nullptr : out.c_str(), &result);
    const std::string result_text = take(result);
    if (!result_text.empty()) {
      const auto doc = nlohmann::json::parse(result_text);
      for (const auto& p : doc.at("points"))
        std::cout << "K=" << p.at("k") << " sa_nodes=" << p.at("sa_nodes") << " total=" << p.at("total_messages")
                  << " gossip=" << p.at("totals").at("gossip") << " commits=" << p.at("commits") << "\n";
      const auto& f = doc.at("fits").at("total_messages");
      std::cout << "total fit: slope " << f.at("slope") << ", intercept " << f.at("intercept") << ", R^2 "
                << f.at("r_squared") << "\n";
    }
    code = s == LEO_OK ? 0 : report_failure(s);
  } else if (*report) {
    char* text = nullptr;
    const leo_status s = leo_report(in_dir.c_str(), &text);
    if (s != LEO_OK) return report_failure(s);
    std::cout << take(text);
  } else if (*validate) {
    const auto text = load(config, std::nullopt);
    if (!text) return 2;
    char* normalized = nullptr;
    const leo_status s = leo_config_normalize(text->c_str(), &normalized);
    if (s != LEO_OK) return report_failure(s);
    std::cout << take(normalized) << "\n";
  } else if (*serve) {
    std::string text;
    if (!config.empty()) {
      const auto loaded = load(config, seed);
      if (!loaded) return 2;
      text = *loaded;
    } else {
      text = nlohmann::json{{"seed", seed.value_or(1)}, {"service_area", {{"slot_width", 6}}}}.dump();
    }
    leo_server* server = nullptr;
    const leo_status s = leo_server_start(text.c_str(), host.empty() ? nullptr : host.c_str(), port,
                                          cors.empty() ? nullptr : cors.c_str(),
                                          static_dir.empty() ? nullptr : static_dir.c_str(), &server);
    if (s != LEO_OK) return report_failure(s);
    std::cout << "leochain control API listening on port " << leo_server_port(server) << std::endl;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    while (!g_stop) std::this_thread::sleep_for(std::chrono::milliseconds(200));
    leo_server_destroy(server);
  }
  return code;
}
