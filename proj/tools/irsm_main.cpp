// Copyright 2026 The IRSM Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <chrono>
#include <csignal>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "irsm/center/api.hpp"
#include "irsm/core/error.hpp"
#include "irsm/netsim/trace.hpp"
#include "irsm/sim/harness.hpp"

namespace {

std::atomic<bool> g_stop{false};

void on_signal(int) { g_stop = true; }

std::map<irsm::RegionClass, double> parse_mix(const std::string& text) {
  std::map<irsm::RegionClass, double> mix;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw irsm::Error(irsm::ErrorCode::kInvalidArgument, "mix entry '" + item + "'");
    mix[irsm::parse_enum<irsm::RegionClass>(item.substr(0, eq))] = std::stod(item.substr(eq + 1));
  }
  return mix;
}

int cmd_run(const std::string& file, std::optional<std::uint64_t> seed, const std::string& trace_out,
            const std::string& report_out) {
  irsm::sim::Scenario sc;
  try {
    sc = irsm::sim::load_scenario(file);
  } catch (const irsm::Error& e) {
    std::cerr << "irsm: " << e.what() << "\n";
    return 2;
  }
  irsm::sim::Simulation sim(std::move(sc), seed);
  const auto started = std::chrono::steady_clock::now();
  const irsm::sim::Report report = sim.run();
  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

  nlohmann::json j = report.to_json();
  j["wall_seconds"] = wall;
  if (!report_out.empty()) {
    std::ofstream(report_out) << j.dump(2) << "\n";
  } else {
    std::cout << j.dump(2) << "\n";
  }
  if (!trace_out.empty()) {
    std::ofstream out(trace_out);
    sim.trace().write(out);
  }
  for (const auto& a : report.asserts) {
    std::cerr << (a.passed ? "PASS " : "FAIL ") << "line " << a.line << ": " << a.metric << " " << a.op << " "
              << a.expected << " (actual " << a.actual << ")\n";
  }
  std::cerr << "trace digest " << report.trace_digest << "\n";
  return report.passed() ? 0 : 1;
}

int cmd_serve(const std::string& file, int port, double timescale, double wall_limit) {
  irsm::sim::Scenario sc;
  try {
    sc = irsm::sim::load_scenario(file);
  } catch (const irsm::Error& e) {
    std::cerr << "irsm: " << e.what() << "\n";
    return 2;
  }
  std::mutex guard;
  irsm::sim::Simulation sim(std::move(sc));
  {
    std::lock_guard lock(guard);
    sim.start();
  }
  irsm::center::ApiRouter router(sim.center());
  irsm::center::ApiServer server(router, &guard);
  const int bound = server.start("127.0.0.1", port);
  std::cout << "listening on http://127.0.0.1:" << bound << std::endl;

  std::signal(SIGINT, on_signal);
  std::signal(SIGTERM, on_signal);
  const auto tick = std::chrono::milliseconds(100);
  const auto began = std::chrono::steady_clock::now();
  auto next = began;
  while (!g_stop) {
    next += tick;
    std::this_thread::sleep_until(next);
    {
      std::lock_guard lock(guard);
      sim.advance_to(sim.now() + irsm::seconds_f(0.1 * timescale));
    }
    if (wall_limit > 0 &&
        std::chrono::duration<double>(std::chrono::steady_clock::now() - began).count() >= wall_limit) {
      break;
    }
  }
  server.stop();
  std::lock_guard lock(guard);
  std::cout << "stopped at t=" << irsm::format_seconds(sim.now()) << " digest " << sim.trace().digest() << std::endl;
  return 0;
}

int cmd_report(const std::string& file) {
  std::ifstream in(file);
  if (!in) {
    std::cerr << "irsm: cannot open " << file << "\n";
    return 2;
  }
  const auto s = irsm::netsim::summarize_trace(in);
  nlohmann::json j;
  j["events"] = s.events;
  j["last_time_s"] = s.last_time;
  j["recorded_digest"] = s.recorded_digest;
  j["computed_digest"] = s.computed_digest;
  j["digest_ok"] = s.digest_ok();
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [kind, n] : s.counts_by_kind) counts[kind] = n;
  j["counts"] = counts;
  std::cout << j.dump(2) << "\n";
  return s.digest_ok() ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ITS roadside station management simulator"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run a scenario on the virtual clock");
  std::string run_file, trace_out, report_out;
  std::optional<std::uint64_t> seed;
  run->add_option("file", run_file, "Scenario YAML")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--trace", trace_out, "Write the event trace here");
  run->add_option("--report", report_out, "Write the JSON report here instead of stdout");

  auto* boot = app.add_subcommand("bootstrap", "Generate a fleet of station registrations");
  int count = 0;
  std::string mix = "URBAN=0.25,HIGHWAY_DENSE=0.25,HIGHWAY_SPARSE=0.25,RURAL=0.25";
  boot->add_option("--count", count, "Number of stations")->required();
  boot->add_option("--mix", mix, "Region class weights, e.g. URBAN=0.3,RURAL=0.7");

  auto* serve = app.add_subcommand("serve", "Serve the management API over a live simulated fleet");
  std::string serve_file;
  int port = 8080;
  double timescale = 1.0, wall_limit = 0.0;
  serve->add_option("file", serve_file, "Scenario YAML")->required();
  serve->add_option("--port", port, "TCP port, 0 picks one");
  serve->add_option("--timescale", timescale, "Virtual seconds per wall second")->check(CLI::PositiveNumber);
  serve->add_option("--for", wall_limit, "Stop after this many wall seconds");

  auto* report = app.add_subcommand("report", "Summarize and verify a trace file");
  std::string trace_file;
  report->add_option("trace", trace_file, "Trace written by run --trace")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return cmd_run(run_file, seed, trace_out, report_out);
    if (*boot) {
      std::cout << irsm::sim::stations_to_yaml(irsm::sim::fleet_bootstrap(count, parse_mix(mix)));
      return 0;
    }
    if (*serve) return cmd_serve(serve_file, port, timescale, wall_limit);
    if (*report) return cmd_report(trace_file);
  } catch (const irsm::Error& e) {
    std::cerr << "irsm: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
