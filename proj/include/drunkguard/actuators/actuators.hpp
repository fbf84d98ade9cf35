#pragma once

#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/sensors/quantity.hpp"

#include <array>
#include <optional>
#include <string>

namespace drunkguard::actuators {

/// Ignition relay standing in for the vehicle's ignition line.
struct IgnitionRelay {
  bool energized = true;  // true: engine may run

  friend bool operator==(IgnitionRelay, IgnitionRelay) = default;
};

enum class RelayCommand { IgnitionOff, Reset };

[[nodiscard]] constexpr IgnitionRelay apply(IgnitionRelay /*relay*/, RelayCommand cmd) {
  return IgnitionRelay{cmd == RelayCommand::Reset};
}

enum class AlarmCommand { On, Off };

class Alarm {
 public:
  bool set(AlarmCommand cmd) {
    on_ = cmd == AlarmCommand::On;
    return on_;
  }
  [[nodiscard]] bool on() const { return on_; }

 private:
  bool on_ = false;
};

inline constexpr std::size_t kLcdColumns = 16;

/// 16x2 character display contents. Rows are always exactly 16 ASCII chars.
class LcdFrame {
 public:
  LcdFrame(std::string_view row0, std::string_view row1);

  [[nodiscard]] const std::string& row(std::size_t i) const { return rows_.at(i); }
  [[nodiscard]] const std::array<std::string, 2>& rows() const { return rows_; }

  friend bool operator==(const LcdFrame&, const LcdFrame&) = default;

 private:
  std::array<std::string, 2> rows_;
};

/// "ALCOHOL: HIGH|LOW" over "BPM: <n>" (or "BPM: --" when absent);
/// a Cutoff decision replaces the second row with "IGNITION LOCKED".
[[nodiscard]] LcdFrame render_lcd(bool alcohol_high, std::optional<sensors::MilliBpm> bpm,
                                  fusion::Decision decision);

}  // namespace drunkguard::actuators
