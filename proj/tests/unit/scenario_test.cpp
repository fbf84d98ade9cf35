#include "drunkguard/harness/decimal.hpp"
#include "drunkguard/harness/scenario.hpp"

#include <doctest.h>

#include <algorithm>
#include <fstream>
#include <iterator>
#include <random>
#include <string>

using namespace drunkguard;
using namespace drunkguard::harness;
using sim::ScenarioEvent;
using sim::SimTime;

namespace {

std::size_t error_line(const std::string& text) {
  try {
    (void)load_scenario(text);
  } catch (const ScenarioParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST_CASE("single breath line") {
  const auto s = load_scenario("at 0.0 breath 0.10");
  REQUIRE(s.events.size() == 1);
  CHECK(s.events[0].at == SimTime(0));
  CHECK(std::get<sim::BreathSample>(s.events[0].payload).conc.value == 100'000);
  CHECK(s.duration == SimTime(0));
}

TEST_CASE("empty text is an empty scenario") {
  const auto s = load_scenario("");
  CHECK(s.events.empty());
  CHECK(s.duration == SimTime(0));
  CHECK(load_scenario("# only a comment\n\n   \n").events.empty());
}

TEST_CASE("parse errors carry the line number") {
  CHECK(error_line("at -1 breath 0.1") == 1);
  CHECK(error_line("at 1 breath 0.1\nfly 3\n") == 2);
  CHECK(error_line("\n\nat soon pulse\n") == 3);
  CHECK(error_line("at 1 eyes shut\n") == 1);
  CHECK(error_line("at 1 breath 11\n") == 1);
  CHECK(error_line("at 1 breath\n") == 1);
  CHECK(error_line("at 1 pulse extra\n") == 1);
  CHECK(error_line("at 1.0000001 pulse\n") == 1);
  CHECK(error_line("repeat pulse every 0 from 0 to 1\n") == 1);
  CHECK(error_line("repeat pulse every 1 from 5 to 1\n") == 1);
  CHECK(error_line("duration 2\nat 3 pulse\n") == 1);
  CHECK(error_line("at 1 horn\n") == 1);
}

TEST_CASE("full directive set") {
  const auto s = load_scenario(
      "name drunk + drowsy   # trailing comment\n"
      "duration 30\n"
      "at 10 eyes closed\n"
      "repeat pulse every 0.75 from 0 to 2\n"
      "at 0 breath 0.5\n"
      "at 15 reset\n"
      "at 20 shutdown\n");
  CHECK(s.name == "drunk + drowsy");
  CHECK(s.duration == SimTime(30'000'000));
  REQUIRE(s.events.size() == 7);
  // Ties keep file order: the pulse at 0 was written before the breath at 0.
  CHECK(s.events[0].channel() == sim::Channel::Pulse);
  CHECK(s.events[1].channel() == sim::Channel::Breath);
  CHECK(s.events[2].at == SimTime(750'000));
  CHECK(s.events[3].at == SimTime(1'500'000));
  CHECK(std::get<sim::EyeLabel>(s.events[4].payload) == sim::EyeLabel::Closed);
  CHECK(std::get<sim::ControlCommand>(s.events[5].payload) == sim::ControlCommand::Reset);
  CHECK(std::get<sim::ControlCommand>(s.events[6].payload) == sim::ControlCommand::Shutdown);
}

TEST_CASE("duration defaults to the last event") {
  CHECK(load_scenario("at 4.5 pulse\nat 2 pulse\n").duration == SimTime(4'500'000));
}

TEST_CASE("decimal helpers") {
  CHECK(parse_micro_decimal("2.125") == 2'125'000);
  CHECK(parse_micro_decimal("0") == 0);
  CHECK(parse_micro_decimal("0.000001") == 1);
  CHECK_FALSE(parse_micro_decimal("1.").has_value());
  CHECK_FALSE(parse_micro_decimal(".5").has_value());
  CHECK_FALSE(parse_micro_decimal("1e3").has_value());
  CHECK_FALSE(parse_micro_decimal("-1").has_value());
  CHECK_FALSE(parse_micro_decimal("99999999999999").has_value());
  CHECK(format_micro_decimal(2'500'000) == "2.5");
  CHECK(format_micro_decimal(0) == "0");
  CHECK(format_micro_decimal(1) == "0.000001");
  CHECK(format_micro_decimal(30'000'000) == "30");
}

TEST_CASE("property: dump then load is the identity") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    Scenario s;
    s.name = trial % 3 ? "case " + std::to_string(trial) : "";
    const int n = static_cast<int>(rng() % 60);
    for (int i = 0; i < n; ++i) {
      const SimTime at(static_cast<sim::Micros>(rng() % 100) * 250'000 + (rng() % 2 ? 1 : 0));
      sim::EventPayload payload;
      switch (rng() % 4) {
        case 0: payload = sim::BreathSample{sensors::BreathConc{static_cast<std::int64_t>(rng() % 10'000'001)}}; break;
        case 1: payload = sim::PulseEdge{}; break;
        case 2: payload = static_cast<sim::EyeLabel>(rng() % 3); break;
        default: payload = static_cast<sim::ControlCommand>(rng() % 2); break;
      }
      s.events.push_back(ScenarioEvent{at, payload});
    }
    std::stable_sort(s.events.begin(), s.events.end(),
                     [](const auto& a, const auto& b) { return a.at < b.at; });
    s.duration = SimTime((s.events.empty() ? 0 : s.events.back().at.micros()) +
                         static_cast<sim::Micros>(rng() % 3) * 1'000'000);
    const auto text = dump_scenario(s);
    const auto loaded = load_scenario(text);
    REQUIRE(loaded == s);
    CHECK(dump_scenario(loaded) == text);
  }
}

TEST_CASE("shipped scenarios load") {
  for (const char* name : {"sober", "drunk_drowsy", "spike", "latch_reset"}) {
    CAPTURE(name);
    std::ifstream in(std::string(DRUNKGUARD_SOURCE_DIR) + "/scenarios/" + name + ".scn");
    REQUIRE(in.good());
    const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK_NOTHROW((void)load_scenario(text));
  }
}
