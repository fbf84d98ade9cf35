#pragma once

#include "drunkguard/sensors/quantity.hpp"
#include "drunkguard/sim/time.hpp"

#include <stdexcept>
#include <string>
#include <type_traits>
#include <variant>

namespace drunkguard::sim {

enum class Channel { Breath, Pulse, EyeFrame, Control };

enum class EyeLabel { Open, Closed, NoFace };

enum class ControlCommand { Reset, Shutdown };

struct BreathSample {
  sensors::BreathConc conc;
  friend bool operator==(const BreathSample&, const BreathSample&) = default;
};

struct PulseEdge {
  friend bool operator==(const PulseEdge&, const PulseEdge&) = default;
};

using EventPayload = std::variant<BreathSample, PulseEdge, EyeLabel, ControlCommand>;

/// Breath payloads must lie in [0, 10 mg/L].
inline constexpr std::int64_t kMaxBreathMicroMgL = 10'000'000;

/// Scheduled scenario input. The channel is implied by the payload alternative.
struct ScenarioEvent {
  SimTime at;
  EventPayload payload;

  [[nodiscard]] Channel channel() const {
    switch (payload.index()) {
      case 0: return Channel::Breath;
      case 1: return Channel::Pulse;
      case 2: return Channel::EyeFrame;
      default: return Channel::Control;
    }
  }

  friend bool operator==(const ScenarioEvent&, const ScenarioEvent&) = default;
};

inline void validate(const ScenarioEvent& event) {
  if (const auto* b = std::get_if<BreathSample>(&event.payload)) {
    if (b->conc.value < 0 || b->conc.value > kMaxBreathMicroMgL) {
      throw std::invalid_argument("breath concentration outside [0, 10] mg/L");
    }
  }
}

inline const char* to_string(EyeLabel label) {
  switch (label) {
    case EyeLabel::Open: return "open";
    case EyeLabel::Closed: return "closed";
    case EyeLabel::NoFace: return "noface";
  }
  return "?";
}

inline const char* to_string(ControlCommand cmd) {
  return cmd == ControlCommand::Reset ? "reset" : "shutdown";
}

/// One-line rendering used by event logs: "breath 500000", "pulse",
/// "eyes closed", "reset", "shutdown".
inline std::string describe(const ScenarioEvent& event) {
  return std::visit(
      [](const auto& p) -> std::string {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, BreathSample>) {
          return "breath " + std::to_string(p.conc.value);
        } else if constexpr (std::is_same_v<T, PulseEdge>) {
          return "pulse";
        } else if constexpr (std::is_same_v<T, EyeLabel>) {
          return std::string("eyes ") + to_string(p);
        } else {
          return to_string(p);
        }
      },
      event.payload);
}

}  // namespace drunkguard::sim
