#include "drunkguard/alert/alert.hpp"
#include "drunkguard/harness/config.hpp"
#include "drunkguard/harness/replay.hpp"
#include "drunkguard/harness/runner.hpp"
#include "drunkguard/harness/scenario.hpp"
#include "drunkguard/harness/truth_table.hpp"
#include "drunkguard/net/tcp_listener.hpp"
#include "drunkguard/net/transport.hpp"
#include "drunkguard/sensors/eyes.hpp"

#include <CLI11.hpp>

#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace drunkguard;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitParse = 2;
constexpr int kExitIo = 3;
constexpr int kExitReplayMismatch = 4;

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return buf.str();
}

struct RunArgs {
  std::string scenario;
  std::string config;
  std::string log;
  std::string frames;
  std::string policy;
  std::string telemetry_host;
  std::string app_host;
  std::vector<std::string> settings;
  std::optional<int> debounce;
  std::optional<std::uint64_t> seed;
};

int command_run(const RunArgs& args) {
  harness::Scenario scenario;
  harness::RunConfig config;
  try {
    scenario = harness::load_scenario(read_file(args.scenario));
    if (!args.config.empty()) harness::apply_config_text(config, read_file(args.config));
    // Command-line flags override the file.
    if (!args.policy.empty()) harness::apply_setting(config, "policy", args.policy);
    if (args.debounce) harness::apply_setting(config, "debounce", std::to_string(*args.debounce));
    if (args.seed) harness::apply_setting(config, "seed", std::to_string(*args.seed));
    if (!args.telemetry_host.empty()) {
      harness::apply_setting(config, "telemetry.host", args.telemetry_host);
    }
    if (!args.app_host.empty()) harness::apply_setting(config, "app.host", args.app_host);
    for (const auto& kv : args.settings) {
      const auto eq = kv.find('=');
      if (eq == std::string::npos) throw harness::ConfigError("--set expects key=value");
      harness::apply_setting(config, kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.frames.empty()) {
      const int fps = harness::merge_frame_labels(scenario, read_file(args.frames));
      config.sensors.eyes.fps = fps;
    }
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const harness::ScenarioParseError& e) {
    std::cerr << "error: " << args.scenario << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const sensors::FrameLabelError& e) {
    std::cerr << "error: " << args.frames << ": " << e.what() << '\n';
    return kExitParse;
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kExitParse;
  }

  net::TcpTransport transport;
  harness::RunSummary summary;
  try {
    summary = harness::run(scenario, config, transport);
  } catch (const harness::ConfigError& e) {
    std::cerr << "error: config: " << e.what() << '\n';
    return kExitParse;
  }

  if (args.log.empty()) {
    summary.log.write(std::cout);
  } else {
    std::ofstream out(args.log, std::ios::binary | std::ios::trunc);
    summary.log.write(out);
    out.flush();
    if (!out) {
      std::cerr << "error: cannot write " << args.log << '\n';
      return kExitIo;
    }
  }
  std::cerr << "run complete: " << summary.evaluations << " evaluations, " << summary.cutoffs
            << " cutoffs, " << summary.alerts << " alerts, ignition "
            << (summary.ignition_energized ? "ON" : "OFF") << ", final decision "
            << fusion::to_string(summary.final_decision) << '\n';
  return kExitOk;
}

int command_truth_table(const std::string& policy_text) {
  if (!policy_text.empty()) {
    try {
      std::cout << harness::format_truth_table(fusion::parse_policy(policy_text));
    } catch (const std::invalid_argument& e) {
      std::cerr << "error: " << e.what() << '\n';
      return kExitUsage;
    }
    return kExitOk;
  }
  const auto count2 = harness::truth_table(fusion::Policy::CountAtLeastTwo);
  const auto gated = harness::truth_table(fusion::Policy::AlcoholGated);
  std::cout << harness::format_truth_table(fusion::Policy::CountAtLeastTwo) << '\n'
            << harness::format_truth_table(fusion::Policy::AlcoholGated) << '\n'
            << "differ at:";
  for (std::size_t i = 0; i < count2.size(); ++i) {
    if (count2[i].fire != gated[i].fire) {
      const auto& f = count2[i].flags;
      std::cout << ' ' << f.a << f.h << f.d;
    }
  }
  std::cout << '\n';
  return kExitOk;
}

int command_replay(const std::string& path) {
  std::vector<harness::LogRecord> records;
  try {
    records = harness::parse_log(read_file(path));
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const harness::LogFormatError& e) {
    std::cerr << "error: " << path << ": " << e.what() << '\n';
    return kExitParse;
  }
  const harness::ReplayReport report = harness::replay(records);
  if (!report.ok) {
    std::cerr << report.message << '\n';
    return kExitReplayMismatch;
  }
  std::cout << report.message << '\n';
  return kExitOk;
}

std::string escape(const net::Bytes& bytes) {
  std::string out;
  for (std::uint8_t b : bytes) {
    if (b == '\r') {
      out += "\\r";
    } else if (b == '\n') {
      out += "\\n";
    } else if (b == '\\') {
      out += "\\\\";
    } else if (b >= 0x20 && b < 0x7f) {
      out += static_cast<char>(b);
    } else {
      char hex[5];
      std::snprintf(hex, sizeof(hex), "\\x%02x", b);
      out += hex;
    }
  }
  return out;
}

// Serves until `count` connections were handled (0 = forever).
int serve(const std::string& host, std::uint16_t port, std::size_t count,
          const std::function<void(const net::Bytes&)>& on_payload) {
  std::mutex mutex;
  std::condition_variable cv;
  std::size_t seen = 0;
  try {
    net::TcpListener listener(host, port, [&](net::Bytes payload) {
      std::lock_guard lock(mutex);
      on_payload(payload);
      std::cout.flush();
      ++seen;
      cv.notify_all();
    });
    std::cout << "listening on " << listener.address().to_string() << std::endl;
    std::unique_lock lock(mutex);
    cv.wait(lock, [&] { return count != 0 && seen >= count; });
  } catch (const std::runtime_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitIo;
  }
  return kExitOk;
}

int command_app_stub(const std::string& host, std::uint16_t port, std::size_t count) {
  return serve(host, port, count, [](const net::Bytes& payload) {
    std::string text(payload.begin(), payload.end());
    std::size_t start = 0;
    while (start < text.size()) {
      auto nl = text.find('\n', start);
      const std::size_t end = nl == std::string::npos ? text.size() : nl + 1;
      const std::string line = text.substr(start, end - start);
      start = end;
      try {
        const alert::AlertRecord r = alert::parse_alert(line);
        std::cout << "alert seq=" << r.seq << " ts_us=" << r.ts.micros() << " flags="
                  << r.flags.a << r.flags.h << r.flags.d << " c=" << r.flags.count()
                  << " breath=" << r.breath_micro_mg_l << " bpm=" << r.bpm_milli
                  << " decision=" << fusion::to_string(r.decision) << '\n';
      } catch (const alert::AlertParseError& e) {
        std::cout << "invalid (field " << e.field() << "): " << e.what() << '\n';
      }
    }
  });
}

int command_sink_stub(const std::string& host, std::uint16_t port, std::size_t count) {
  return serve(host, port, count, [](const net::Bytes& payload) {
    std::cout << "recv " << payload.size() << " bytes: " << escape(payload) << '\n';
  });
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Drunk-driving interlock simulator"};
  app.require_subcommand(1);

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "Run a scenario and write the event log");
  run->add_option("--scenario", run_args.scenario, "Scenario file")->required();
  run->add_option("--config", run_args.config, "key = value config file");
  run->add_option("--log", run_args.log, "Log output path (default: stdout)");
  run->add_option("--frames", run_args.frames, "Eye frame-label file (fps=<n> header)");
  run->add_option("--policy", run_args.policy, "count-at-least-two | alcohol-gated");
  run->add_option("--debounce", run_args.debounce, "Consecutive firing cycles before cutoff");
  run->add_option("--seed", run_args.seed, "Noise seed");
  run->add_option("--telemetry-host", run_args.telemetry_host, "Telemetry endpoint host:port");
  run->add_option("--app-host", run_args.app_host, "Alert app endpoint host:port");
  run->add_option("--set", run_args.settings, "Extra config setting key=value (repeatable)");

  std::string policy;
  auto* table = app.add_subcommand("truth-table", "Print the gating policy truth table");
  table->add_option("--policy", policy, "count-at-least-two | alcohol-gated (default: both)");

  std::string log_path;
  auto* replay = app.add_subcommand("replay", "Re-verify decisions recorded in a log");
  replay->add_option("log", log_path, "Log file")->required();

  std::string host = "127.0.0.1";
  std::uint16_t port = 0;
  std::size_t count = 0;
  auto* app_stub = app.add_subcommand("app-stub", "Listen for alert lines and print them");
  auto* sink_stub = app.add_subcommand("sink-stub", "Accept telemetry connections and print bytes");
  for (auto* sub : {app_stub, sink_stub}) {
    sub->add_option("--host", host, "Bind address")->capture_default_str();
    sub->add_option("--port", port, "Port (0 = ephemeral)")->capture_default_str();
    sub->add_option("--count", count, "Exit after this many connections (0 = never)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  if (*run) return command_run(run_args);
  if (*table) return command_truth_table(policy);
  if (*replay) return command_replay(log_path);
  if (*app_stub) return command_app_stub(host, port, count);
  if (*sink_stub) return command_sink_stub(host, port, count);
  return kExitUsage;
}
