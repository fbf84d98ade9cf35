#pragma once

#include <compare>
#include <cstdint>

namespace drunkguard::sensors {

/// Integer fixed-point quantity tagged by unit so concentrations, voltages and
/// rates cannot be mixed up.
template <class Tag>
struct Quantity {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(Quantity, Quantity) = default;
};

using BreathConc = Quantity<struct BreathConcTag>;  // micro-mg/L
using MicroRatio = Quantity<struct MicroRatioTag>;  // Rs/R0 x 1e6
using MicroVolts = Quantity<struct MicroVoltsTag>;
using MilliBpm = Quantity<struct MilliBpmTag>;

/// Rounds num/den to the nearest integer, ties away from zero. Both operands
/// must be non-negative and den positive.
constexpr std::int64_t div_round_half_up(std::int64_t num, std::int64_t den) {
  return num / den + (num % den >= (den + 1) / 2 ? 1 : 0);
}

}  // namespace drunkguard::sensors
