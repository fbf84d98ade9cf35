#include "drunkguard/fusion/engine.hpp"

#include <stdexcept>
#include <string>

namespace drunkguard::fusion {

StepResult step(const InterlockState& state, FlagVector flags, Policy policy) {
  StepResult out{state, Decision::Normal, {}};
  InterlockState& next = out.state;
  next.last_flags = flags;

  if (fire(flags, policy)) {
    ++next.consecutive_fire;
    next.consecutive_clear = 0;
  } else {
    next.consecutive_fire = 0;
    ++next.consecutive_clear;
  }

  if (state.latched_off) {
    out.decision = Decision::Cutoff;
  } else if (next.consecutive_fire >= next.debounce_n) {
    next.latched_off = true;
    out.decision = Decision::Cutoff;
    out.commands = {Command::IgnitionOff, Command::AlarmOn, Command::SendAlert,
                    Command::TelemetryPush};
  } else if (next.consecutive_fire > 0) {
    out.decision = Decision::Warn;
    out.commands = {Command::LcdWarn, Command::TelemetryPush};
  }
  next.last_decision = out.decision;
  return out;
}

StepResult reset(const InterlockState& state) {
  InterlockState fresh;
  fresh.debounce_n = state.debounce_n;
  return StepResult{fresh, Decision::Normal, {Command::IgnitionReset, Command::AlarmOff}};
}

std::string_view to_string(Policy policy) {
  switch (policy) {
    case Policy::CountAtLeastTwo: return "count-at-least-two";
    case Policy::AlcoholGated: return "alcohol-gated";
  }
  return "?";
}

std::string_view to_string(Decision decision) {
  switch (decision) {
    case Decision::Normal: return "NORMAL";
    case Decision::Warn: return "WARN";
    case Decision::Cutoff: return "CUTOFF";
  }
  return "?";
}

std::string_view to_string(Command command) {
  switch (command) {
    case Command::IgnitionOff: return "IGNITION_OFF";
    case Command::AlarmOn: return "ALARM_ON";
    case Command::SendAlert: return "SEND_ALERT";
    case Command::TelemetryPush: return "TELEMETRY_PUSH";
    case Command::LcdWarn: return "LCD_WARN";
    case Command::IgnitionReset: return "IGNITION_RESET";
    case Command::AlarmOff: return "ALARM_OFF";
  }
  return "?";
}

Policy parse_policy(std::string_view text) {
  for (Policy p : {Policy::CountAtLeastTwo, Policy::AlcoholGated}) {
    if (text == to_string(p)) return p;
  }
  throw std::invalid_argument("unknown policy '" + std::string(text) +
                              "' (expected count-at-least-two or alcohol-gated)");
}

Decision parse_decision(std::string_view text) {
  for (Decision d : {Decision::Normal, Decision::Warn, Decision::Cutoff}) {
    if (text == to_string(d)) return d;
  }
  throw std::invalid_argument("unknown decision '" + std::string(text) + "'");
}

}  // namespace drunkguard::fusion
