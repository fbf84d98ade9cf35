#include "drunkguard/harness/scenario.hpp"

#include "drunkguard/harness/decimal.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace drunkguard::harness {

using sim::ScenarioEvent;
using sim::SimTime;

ScenarioParseError::ScenarioParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

class LineParser {
 public:
  LineParser(std::size_t line_no, std::vector<std::string_view> words)
      : line_no_(line_no), words_(std::move(words)) {}

  [[noreturn]] void fail(const std::string& what) const { throw ScenarioParseError(line_no_, what); }

  std::string_view word(std::size_t i, std::string_view expected) const {
    if (i >= words_.size()) fail("missing " + std::string(expected));
    return words_[i];
  }

  void expect_count(std::size_t n) const {
    if (words_.size() != n) {
      fail("expected " + std::to_string(n) + " words, got " + std::to_string(words_.size()));
    }
  }

  SimTime seconds(std::size_t i, std::string_view what) const {
    const std::string_view w = word(i, what);
    if (!w.empty() && w.front() == '-') fail(std::string(what) + " must not be negative");
    const auto micros = parse_micro_decimal(w);
    if (!micros) fail(std::string(what) + " is not a decimal number of seconds: '" + std::string(w) + "'");
    return SimTime(*micros);
  }

  sensors::BreathConc breath(std::size_t i) const {
    const std::string_view w = word(i, "concentration");
    if (!w.empty() && w.front() == '-') fail("breath concentration must not be negative");
    const auto micros = parse_micro_decimal(w);
    if (!micros) fail("breath concentration is not a decimal mg/L value: '" + std::string(w) + "'");
    if (*micros > sim::kMaxBreathMicroMgL) fail("breath concentration above 10 mg/L");
    return sensors::BreathConc{*micros};
  }

  const std::vector<std::string_view>& words() const { return words_; }

 private:
  std::size_t line_no_;
  std::vector<std::string_view> words_;
};

std::optional<sim::EyeLabel> parse_eye_label(std::string_view w) {
  if (w == "open") return sim::EyeLabel::Open;
  if (w == "closed") return sim::EyeLabel::Closed;
  if (w == "noface") return sim::EyeLabel::NoFace;
  return std::nullopt;
}

ScenarioEvent parse_at(const LineParser& p) {
  const SimTime at = p.seconds(1, "time");
  const std::string_view channel = p.word(2, "channel");
  if (channel == "breath") {
    p.expect_count(4);
    return ScenarioEvent{at, sim::BreathSample{p.breath(3)}};
  }
  if (channel == "pulse") {
    p.expect_count(3);
    return ScenarioEvent{at, sim::PulseEdge{}};
  }
  if (channel == "eyes") {
    p.expect_count(4);
    const auto label = parse_eye_label(p.word(3, "eye state"));
    if (!label) p.fail("eye state must be open, closed or noface");
    return ScenarioEvent{at, *label};
  }
  if (channel == "reset" || channel == "shutdown") {
    p.expect_count(3);
    return ScenarioEvent{at, channel == "reset" ? sim::ControlCommand::Reset
                                                : sim::ControlCommand::Shutdown};
  }
  p.fail("unknown channel '" + std::string(channel) + "'");
}

void parse_repeat(const LineParser& p, std::vector<ScenarioEvent>& out) {
  p.expect_count(8);
  if (p.word(1, "channel") != "pulse" || p.word(2, "'every'") != "every" ||
      p.word(4, "'from'") != "from" || p.word(6, "'to'") != "to") {
    p.fail("expected: repeat pulse every <s> from <s> to <s>");
  }
  const SimTime every = p.seconds(3, "period");
  const SimTime from = p.seconds(5, "start");
  const SimTime to = p.seconds(7, "end");
  if (every.micros() <= 0) p.fail("period must be positive");
  if (to < from) p.fail("end precedes start");
  for (SimTime t = from; t <= to; t = t + every.micros()) {
    out.push_back(ScenarioEvent{t, sim::PulseEdge{}});
  }
}

}  // namespace

Scenario load_scenario(std::string_view text) {
  Scenario scenario;
  std::optional<SimTime> duration;
  std::size_t duration_line = 0;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    auto words = split_words(line);
    if (words.empty()) continue;
    const LineParser p(line_no, std::move(words));
    const std::string_view directive = p.words().front();

    if (directive == "at") {
      scenario.events.push_back(parse_at(p));
    } else if (directive == "repeat") {
      parse_repeat(p, scenario.events);
    } else if (directive == "duration") {
      p.expect_count(2);
      duration = p.seconds(1, "duration");
      duration_line = line_no;
    } else if (directive == "name") {
      std::string name;
      for (std::size_t i = 1; i < p.words().size(); ++i) {
        if (i > 1) name += ' ';
        name += p.words()[i];
      }
      scenario.name = std::move(name);
    } else {
      p.fail("unknown directive '" + std::string(directive) + "'");
    }
  }

  std::stable_sort(scenario.events.begin(), scenario.events.end(),
                   [](const ScenarioEvent& a, const ScenarioEvent& b) { return a.at < b.at; });
  const SimTime last = scenario.events.empty() ? SimTime{} : scenario.events.back().at;
  if (duration && *duration < last) {
    throw ScenarioParseError(duration_line, "duration is shorter than the last event time");
  }
  scenario.duration = duration.value_or(last);
  return scenario;
}

std::string dump_scenario(const Scenario& scenario) {
  std::ostringstream out;
  if (!scenario.name.empty()) out << "name " << scenario.name << '\n';
  out << "duration " << format_micro_decimal(scenario.duration.micros()) << '\n';
  for (const auto& e : scenario.events) {
    out << "at " << format_micro_decimal(e.at.micros()) << ' ';
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, sim::BreathSample>) {
            out << "breath " << format_micro_decimal(p.conc.value);
          } else if constexpr (std::is_same_v<T, sim::PulseEdge>) {
            out << "pulse";
          } else if constexpr (std::is_same_v<T, sim::EyeLabel>) {
            out << "eyes " << sim::to_string(p);
          } else {
            out << sim::to_string(p);
          }
        },
        e.payload);
    out << '\n';
  }
  return out.str();
}

}  // namespace drunkguard::harness
