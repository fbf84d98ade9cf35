#include "drunkguard/harness/replay.hpp"

#include <charconv>
#include <sstream>

namespace drunkguard::harness {

namespace {

std::optional<fusion::FlagVector> parse_flags(std::string_view payload) {
  if (payload.size() < 3) return std::nullopt;
  fusion::FlagVector f;
  bool* slots[] = {&f.a, &f.h, &f.d};
  for (int i = 0; i < 3; ++i) {
    if (payload[i] != '0' && payload[i] != '1') return std::nullopt;
    *slots[i] = payload[i] == '1';
  }
  if (payload.size() > 3 && payload[3] != ' ') return std::nullopt;
  return f;
}

// "session policy=<p> debounce=<n> ..." -> options
void apply_session(std::string_view payload, ReplayOptions& opts) {
  std::istringstream in{std::string(payload)};
  std::string word;
  in >> word;  // "session"
  while (in >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos) continue;
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    if (key == "policy") {
      opts.policy = fusion::parse_policy(value);
    } else if (key == "debounce") {
      opts.debounce_n = std::stoi(value);
    }
  }
}

ReplayReport diverged(ReplayReport report, sim::SimTime ts, std::string why) {
  report.ok = false;
  report.divergence = ts;
  report.message = "mismatch at " + std::to_string(ts.micros()) + " us: " + why;
  return report;
}

}  // namespace

ReplayReport replay(const std::vector<LogRecord>& records, const ReplayOptions& options) {
  ReplayReport report;
  ReplayOptions opts = options;
  fusion::InterlockState state;
  state.debounce_n = opts.debounce_n;
  std::optional<fusion::StepResult> expected;  // from the latest FLAGS record

  for (std::size_t i = 0; i < records.size(); ++i) {
    const LogRecord& r = records[i];
    if (i > 0 && r.ts < records[i - 1].ts) {
      return diverged(report, r.ts, "timestamp goes backwards");
    }
    switch (r.kind) {
      case LogKind::Event:
        if (r.payload.rfind("session ", 0) == 0) {
          try {
            apply_session(r.payload, opts);
          } catch (const std::exception&) {
            return diverged(report, r.ts, "unreadable session record");
          }
          state.debounce_n = opts.debounce_n;
        } else if (r.payload == "reset") {
          state = fusion::reset(state).state;
        }
        break;
      case LogKind::Flags: {
        if (expected) {
          return diverged(report, r.ts, "flags record without a decision");
        }
        const auto flags = parse_flags(r.payload);
        if (!flags) return diverged(report, r.ts, "unreadable flags record");
        expected = fusion::step(state, *flags, opts.policy);
        state = expected->state;
        break;
      }
      case LogKind::Decision: {
        if (!expected) return diverged(report, r.ts, "decision without flags");
        if (r.payload != fusion::to_string(expected->decision)) {
          return diverged(report, r.ts,
                          "logged " + r.payload + ", recomputed " +
                              std::string(fusion::to_string(expected->decision)));
        }
        std::size_t j = i + 1;
        for (fusion::Command cmd : expected->commands) {
          if (j < records.size() && records[j].ts < records[j - 1].ts) {
            return diverged(report, records[j].ts, "timestamp goes backwards");
          }
          if (j >= records.size() || records[j].kind != LogKind::Command ||
              records[j].payload != fusion::to_string(cmd)) {
            return diverged(report, r.ts,
                            "expected command " + std::string(fusion::to_string(cmd)));
          }
          ++j;
        }
        if (j < records.size() && records[j].kind == LogKind::Command) {
          return diverged(report, r.ts, "unexpected command " + records[j].payload);
        }
        i = j - 1;
        expected.reset();
        ++report.decisions;
        break;
      }
      default:
        break;
    }
  }
  if (expected) {
    return diverged(report, records.back().ts, "flags record without a decision");
  }
  report.message = "OK, " + std::to_string(report.decisions) + " decisions verified";
  return report;
}

}  // namespace drunkguard::harness
