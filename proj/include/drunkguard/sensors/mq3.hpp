#pragma once

#include "drunkguard/sensors/quantity.hpp"

namespace drunkguard::sensors {

/// Detection range of the MQ-3 element; readings outside are clamped.
inline constexpr BreathConc kMq3MinConc{40'000};
inline constexpr BreathConc kMq3MaxConc{4'000'000};

/// Default comparator trip concentration. Arbitrary model default (0.25 mg/L
/// breath); adjust via threshold_volts the way the module's potentiometer is.
inline constexpr BreathConc kDefaultTripConc{250'000};

/// MQ-3 breath-alcohol model: Rs/R0 = curve_a * C^curve_b (C in mg/L), read
/// through a voltage divider V = supply * load / (load + Rs), and a comparator
/// on V for the digital output.
///
/// The power-law coefficients are model defaults for a MOS sensor, not
/// datasheet values.
struct Mq3Config {
  double r0_ohms = 10'000.0;
  double load_ohms = 10'000.0;
  double supply_volts = 5.0;
  double curve_a = 0.4;
  double curve_b = -0.6;
  /// Divider voltage at kDefaultTripConc under the defaults above.
  double threshold_volts = 2.6055798083072123;

  /// Throws std::invalid_argument when any field is out of its domain.
  void validate() const;
};

[[nodiscard]] BreathConc clamp_to_detection_range(BreathConc conc);

/// Rs/R0 in micro-units at the clamped concentration.
[[nodiscard]] MicroRatio mq3_ratio(BreathConc conc, const Mq3Config& cfg);

[[nodiscard]] MicroVolts mq3_analog_volts(BreathConc conc, const Mq3Config& cfg);

/// Comparator output; ties trip high.
[[nodiscard]] bool mq3_digital(MicroVolts volts, const Mq3Config& cfg);

/// Comparator voltage that makes `trip` the lowest concentration reading high.
[[nodiscard]] double threshold_for_trip(BreathConc trip, const Mq3Config& cfg);

}  // namespace drunkguard::sensors
