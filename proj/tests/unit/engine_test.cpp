#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/harness/truth_table.hpp"

#include <doctest.h>

#include <stdexcept>

#include <random>
#include <vector>

using namespace drunkguard::fusion;

namespace {

FlagVector flags_of(int bits) { return FlagVector{(bits & 4) != 0, (bits & 2) != 0, (bits & 1) != 0}; }

int popcount3(int bits) { return (bits & 1) + ((bits >> 1) & 1) + ((bits >> 2) & 1); }

std::vector<Decision> run_decisions(const std::vector<FlagVector>& seq, Policy policy, int n) {
  InterlockState s;
  s.debounce_n = n;
  std::vector<Decision> out;
  for (const auto& f : seq) {
    auto r = step(s, f, policy);
    out.push_back(r.decision);
    s = r.state;
  }
  return out;
}

}  // namespace

TEST_CASE("fire matches brute-force enumeration on all eight inputs") {
  for (int bits = 0; bits < 8; ++bits) {
    const auto f = flags_of(bits);
    CAPTURE(bits);
    CHECK(f.count() == popcount3(bits));
    CHECK(fire(f, Policy::CountAtLeastTwo) == (popcount3(bits) >= 2));
    const bool a = bits & 4, h = bits & 2, d = bits & 1;
    CHECK(fire(f, Policy::AlcoholGated) == (a && (h || d)));
  }
}

TEST_CASE("policies diverge only at 011") {
  std::vector<int> differ;
  for (int bits = 0; bits < 8; ++bits) {
    if (fire(flags_of(bits), Policy::CountAtLeastTwo) != fire(flags_of(bits), Policy::AlcoholGated)) {
      differ.push_back(bits);
    }
  }
  CHECK(differ == std::vector<int>{0b011});
  CHECK(fire({true, true, false}, Policy::CountAtLeastTwo));
  CHECK_FALSE(fire({}, Policy::CountAtLeastTwo));
  CHECK_FALSE(fire({}, Policy::AlcoholGated));
}

TEST_CASE("truth tables list the firing rows") {
  auto fire_rows = [](Policy p) {
    std::vector<int> rows;
    const auto table = drunkguard::harness::truth_table(p);
    for (int i = 0; i < 8; ++i) {
      CHECK(table[static_cast<std::size_t>(i)].flags == flags_of(i));
      if (table[static_cast<std::size_t>(i)].fire) rows.push_back(i);
    }
    return rows;
  };
  CHECK(fire_rows(Policy::CountAtLeastTwo) == std::vector<int>{0b011, 0b101, 0b110, 0b111});
  CHECK(fire_rows(Policy::AlcoholGated) == std::vector<int>{0b101, 0b110, 0b111});
}

TEST_CASE("three firing cycles give Warn, Warn, Cutoff") {
  InterlockState s;
  const FlagVector f{true, true, false};
  auto r1 = step(s, f, Policy::CountAtLeastTwo);
  auto r2 = step(r1.state, f, Policy::CountAtLeastTwo);
  auto r3 = step(r2.state, f, Policy::CountAtLeastTwo);
  CHECK(r1.decision == Decision::Warn);
  CHECK(r2.decision == Decision::Warn);
  CHECK(r3.decision == Decision::Cutoff);
  CHECK(r1.commands == std::vector<Command>{Command::LcdWarn, Command::TelemetryPush});
  CHECK(r3.commands == std::vector<Command>{Command::IgnitionOff, Command::AlarmOn,
                                            Command::SendAlert, Command::TelemetryPush});
  CHECK(r3.state.latched_off);
  CHECK(r3.state.consecutive_fire == 3);
}

TEST_CASE("latched state stays Cutoff and emits nothing") {
  InterlockState s;
  s.latched_off = true;
  auto r = step(s, FlagVector{}, Policy::CountAtLeastTwo);
  CHECK(r.decision == Decision::Cutoff);
  CHECK(r.commands.empty());
  CHECK(r.state.latched_off);
  CHECK(r.state.consecutive_clear == 1);
}

TEST_CASE("reset re-arms and keeps debounce_n") {
  InterlockState s;
  s.latched_off = true;
  s.consecutive_fire = 7;
  s.debounce_n = 5;
  s.last_decision = Decision::Cutoff;
  auto r = reset(s);
  CHECK_FALSE(r.state.latched_off);
  CHECK(r.state.consecutive_fire == 0);
  CHECK(r.state.consecutive_clear == 0);
  CHECK(r.state.debounce_n == 5);
  CHECK(r.decision == Decision::Normal);
  CHECK(r.commands == std::vector<Command>{Command::IgnitionReset, Command::AlarmOff});

  auto again = run_decisions({{true, true, true}}, Policy::CountAtLeastTwo, 1);
  CHECK(again == std::vector<Decision>{Decision::Cutoff});
}

TEST_CASE("property: an isolated fire never cuts off for debounce_n >= 2") {
  std::mt19937_64 rng(11);
  for (int n = 2; n <= 6; ++n) {
    for (int trial = 0; trial < 200; ++trial) {
      std::vector<FlagVector> seq;
      const int len = 3 + static_cast<int>(rng() % 40);
      for (int i = 0; i < len; ++i) {
        // Non-firing under both policies: at most one flag, never 011.
        seq.push_back(flags_of(std::vector<int>{0, 1, 2, 4}[rng() % 4]));
      }
      const auto spike = static_cast<std::size_t>(rng() % static_cast<std::uint64_t>(len));
      seq[spike] = flags_of(std::vector<int>{3, 5, 6, 7}[rng() % 4]);
      for (Policy p : {Policy::CountAtLeastTwo, Policy::AlcoholGated}) {
        for (Decision d : run_decisions(seq, p, n)) CHECK(d != Decision::Cutoff);
      }
    }
  }
}

TEST_CASE("property: latch is monotone and decisions deterministic without reset") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 500; ++trial) {
    InterlockState s;
    s.debounce_n = 1 + static_cast<int>(rng() % 4);
    const Policy p = rng() % 2 ? Policy::CountAtLeastTwo : Policy::AlcoholGated;
    bool was_latched = false;
    for (int i = 0; i < 60; ++i) {
      const auto f = flags_of(static_cast<int>(rng() % 8));
      const auto r = step(s, f, p);
      const auto r_again = step(s, f, p);
      CHECK(r.state == r_again.state);
      CHECK(r.commands == r_again.commands);
      CHECK((!was_latched || r.state.latched_off));
      CHECK((r.state.latched_off == (r.decision == Decision::Cutoff)));
      was_latched = r.state.latched_off;
      s = r.state;
    }
  }
}

TEST_CASE("names round-trip") {
  for (Policy p : {Policy::CountAtLeastTwo, Policy::AlcoholGated}) CHECK(parse_policy(to_string(p)) == p);
  for (Decision d : {Decision::Normal, Decision::Warn, Decision::Cutoff}) {
    CHECK(parse_decision(to_string(d)) == d);
  }
  CHECK_THROWS_AS((void)parse_policy("majority"), std::invalid_argument);
  CHECK(to_string(Command::SendAlert) == "SEND_ALERT");
}
