#pragma once

#include "drunkguard/sim/event.hpp"

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace drunkguard::harness {

/// A scripted drive: timed sensor/control inputs, run for `duration`.
/// Events are sorted by time; same-time events keep their file order.
struct Scenario {
  std::string name;
  std::vector<sim::ScenarioEvent> events;
  sim::SimTime duration;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

class ScenarioParseError : public std::runtime_error {
 public:
  ScenarioParseError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Line-oriented scenario language. Times are seconds with up to six decimals.
///
///   # comment
///   name <text>
///   duration <s>
///   at <s> breath <mg/L>
///   at <s> pulse
///   at <s> eyes open|closed|noface
///   at <s> reset
///   at <s> shutdown
///   repeat pulse every <s> from <s> to <s>
///
/// An `eyes` state holds until the next `eyes` line. Without `duration` the
/// scenario ends at its last event.
[[nodiscard]] Scenario load_scenario(std::string_view text);

/// Normal form: name, duration, then one `at` line per event (repeats
/// expanded). load_scenario(dump_scenario(s)) == s.
[[nodiscard]] std::string dump_scenario(const Scenario& scenario);

}  // namespace drunkguard::harness
