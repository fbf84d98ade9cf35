#pragma once

#include "drunkguard/sim/time.hpp"

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drunkguard::harness {

enum class LogKind { Event, Flags, Decision, Command, Lcd, NetOut, NetResult };

/// One line of the run log: `<ts_us>|<KIND>|<payload>`.
struct LogRecord {
  sim::SimTime ts;
  LogKind kind = LogKind::Event;
  std::string payload;

  friend bool operator==(const LogRecord&, const LogRecord&) = default;
};

class LogFormatError : public std::runtime_error {
 public:
  LogFormatError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] std::string_view to_string(LogKind kind);
[[nodiscard]] std::optional<LogKind> parse_log_kind(std::string_view text);

[[nodiscard]] std::string format_record(const LogRecord& record);

/// Parses a whole log. Blank trailing lines are ignored; timestamps are not
/// checked for order here.
[[nodiscard]] std::vector<LogRecord> parse_log(std::string_view text);

/// Append-only, time-ordered record list.
class EventLog {
 public:
  /// Throws std::logic_error if ts precedes the previous record.
  void append(sim::SimTime ts, LogKind kind, std::string payload);

  [[nodiscard]] const std::vector<LogRecord>& records() const { return records_; }
  [[nodiscard]] std::string str() const;
  void write(std::ostream& out) const;

 private:
  std::vector<LogRecord> records_;
};

}  // namespace drunkguard::harness
