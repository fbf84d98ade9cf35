#pragma once

#include <array>
#include <string_view>
#include <vector>

namespace drunkguard::fusion {

/// Alcohol (a), heart (h) and drowsiness (d) flags.
struct FlagVector {
  bool a = false;
  bool h = false;
  bool d = false;

  /// Number of raised flags, 0..3.
  [[nodiscard]] constexpr int count() const { return int{a} + int{h} + int{d}; }

  friend constexpr bool operator==(FlagVector, FlagVector) = default;
};

enum class Policy {
  CountAtLeastTwo,  // any two flags
  AlcoholGated,     // alcohol plus heart or drowsy
};

enum class Decision { Normal = 0, Warn = 1, Cutoff = 2 };

enum class Command {
  IgnitionOff,
  AlarmOn,
  SendAlert,
  TelemetryPush,
  LcdWarn,
  IgnitionReset,
  AlarmOff,
};

inline constexpr int kDefaultDebounce = 3;

struct InterlockState {
  bool latched_off = false;
  int consecutive_fire = 0;
  int consecutive_clear = 0;
  int debounce_n = kDefaultDebounce;
  FlagVector last_flags{};
  Decision last_decision = Decision::Normal;

  friend bool operator==(const InterlockState&, const InterlockState&) = default;
};

struct StepResult {
  InterlockState state;
  Decision decision = Decision::Normal;
  std::vector<Command> commands;
};

[[nodiscard]] constexpr bool fire(FlagVector flags, Policy policy) {
  switch (policy) {
    case Policy::CountAtLeastTwo: return flags.count() >= 2;
    case Policy::AlcoholGated: return flags.a && (flags.h || flags.d);
  }
  return false;
}

/// One evaluation cycle. The policy must fire on debounce_n consecutive cycles
/// before the ignition latches off; once latched, the decision stays Cutoff and
/// nothing further is emitted until reset().
[[nodiscard]] StepResult step(const InterlockState& state, FlagVector flags, Policy policy);

/// Explicit re-arm: clears the latch and counters, keeps debounce_n.
[[nodiscard]] StepResult reset(const InterlockState& state);

[[nodiscard]] std::string_view to_string(Policy policy);
[[nodiscard]] std::string_view to_string(Decision decision);
[[nodiscard]] std::string_view to_string(Command command);

/// Inverse of to_string(Policy); throws std::invalid_argument.
[[nodiscard]] Policy parse_policy(std::string_view text);
/// Inverse of to_string(Decision); throws std::invalid_argument.
[[nodiscard]] Decision parse_decision(std::string_view text);

}  // namespace drunkguard::fusion
