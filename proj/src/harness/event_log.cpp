#include "drunkguard/harness/event_log.hpp"

#include <array>
#include <charconv>
#include <utility>

namespace drunkguard::harness {

namespace {

constexpr std::array<std::pair<LogKind, std::string_view>, 7> kKindNames{{
    {LogKind::Event, "EVENT"},
    {LogKind::Flags, "FLAGS"},
    {LogKind::Decision, "DECISION"},
    {LogKind::Command, "COMMAND"},
    {LogKind::Lcd, "LCD"},
    {LogKind::NetOut, "NETOUT"},
    {LogKind::NetResult, "NETRESULT"},
}};

}  // namespace

LogFormatError::LogFormatError(std::size_t line, const std::string& what)
    : std::runtime_error("log line " + std::to_string(line) + ": " + what), line_(line) {}

std::string_view to_string(LogKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

std::optional<LogKind> parse_log_kind(std::string_view text) {
  for (const auto& [k, name] : kKindNames) {
    if (name == text) return k;
  }
  return std::nullopt;
}

std::string format_record(const LogRecord& r) {
  std::string out = std::to_string(r.ts.micros());
  out += '|';
  out += to_string(r.kind);
  out += '|';
  out += r.payload;
  return out;
}

std::vector<LogRecord> parse_log(std::string_view text) {
  std::vector<LogRecord> out;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;

    const auto bar1 = line.find('|');
    const auto bar2 = bar1 == std::string_view::npos ? bar1 : line.find('|', bar1 + 1);
    if (bar2 == std::string_view::npos) {
      throw LogFormatError(line_no, "expected <ts>|<KIND>|<payload>");
    }
    const std::string_view ts_text = line.substr(0, bar1);
    std::int64_t ts = 0;
    auto [ptr, ec] = std::from_chars(ts_text.data(), ts_text.data() + ts_text.size(), ts);
    if (ts_text.empty() || ec != std::errc{} || ptr != ts_text.data() + ts_text.size() || ts < 0) {
      throw LogFormatError(line_no, "bad timestamp '" + std::string(ts_text) + "'");
    }
    const auto kind = parse_log_kind(line.substr(bar1 + 1, bar2 - bar1 - 1));
    if (!kind) {
      throw LogFormatError(line_no, "unknown record kind");
    }
    out.push_back(LogRecord{sim::SimTime(ts), *kind, std::string(line.substr(bar2 + 1))});
  }
  return out;
}

void EventLog::append(sim::SimTime ts, LogKind kind, std::string payload) {
  if (!records_.empty() && ts < records_.back().ts) {
    throw std::logic_error("log record at " + std::to_string(ts.micros()) +
                           " us precedes the previous record");
  }
  records_.push_back(LogRecord{ts, kind, std::move(payload)});
}

std::string EventLog::str() const {
  std::string out;
  for (const auto& r : records_) {
    out += format_record(r);
    out += '\n';
  }
  return out;
}

void EventLog::write(std::ostream& out) const { out << str(); }

}  // namespace drunkguard::harness
