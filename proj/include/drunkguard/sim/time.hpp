#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>

namespace drunkguard::sim {

/// Signed microsecond span used for offsets and periods on the virtual clock.
using Micros = std::int64_t;

/// Point on the virtual clock, integer microseconds since simulation start.
class SimTime {
 public:
  constexpr SimTime() = default;
  constexpr explicit SimTime(Micros micros) : micros_(micros) {
    if (micros < 0) {
      throw std::invalid_argument("SimTime must be non-negative");
    }
  }

  [[nodiscard]] constexpr Micros micros() const { return micros_; }

  friend constexpr auto operator<=>(SimTime, SimTime) = default;

  friend constexpr SimTime operator+(SimTime t, Micros d) { return SimTime(t.micros_ + d); }
  friend constexpr Micros operator-(SimTime a, SimTime b) { return a.micros_ - b.micros_; }

 private:
  Micros micros_ = 0;
};

inline constexpr Micros kMicrosPerSecond = 1'000'000;

}  // namespace drunkguard::sim
