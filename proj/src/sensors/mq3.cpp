#include "drunkguard/sensors/mq3.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace drunkguard::sensors {

namespace {

double ratio_at(BreathConc conc, const Mq3Config& cfg) {
  const double mg_per_l = static_cast<double>(clamp_to_detection_range(conc).value) / 1e6;
  return cfg.curve_a * std::pow(mg_per_l, cfg.curve_b);
}

double volts_at(BreathConc conc, const Mq3Config& cfg) {
  const double rs = ratio_at(conc, cfg) * cfg.r0_ohms;
  return cfg.supply_volts * cfg.load_ohms / (cfg.load_ohms + rs);
}

std::int64_t to_micro(double v) { return std::llround(v * 1e6); }

}  // namespace

void Mq3Config::validate() const {
  if (!(r0_ohms > 0.0)) throw std::invalid_argument("mq3.r0_ohms must be > 0");
  if (!(load_ohms > 0.0)) throw std::invalid_argument("mq3.load_ohms must be > 0");
  if (!(supply_volts > 0.0)) throw std::invalid_argument("mq3.supply_volts must be > 0");
  if (!(curve_a > 0.0)) throw std::invalid_argument("mq3.curve_a must be > 0");
  if (!(curve_b < 0.0)) throw std::invalid_argument("mq3.curve_b must be < 0");
  if (!(threshold_volts > 0.0 && threshold_volts < supply_volts)) {
    throw std::invalid_argument("mq3.threshold_volts must lie in (0, supply_volts)");
  }
}

BreathConc clamp_to_detection_range(BreathConc conc) {
  return std::clamp(conc, kMq3MinConc, kMq3MaxConc);
}

MicroRatio mq3_ratio(BreathConc conc, const Mq3Config& cfg) {
  return MicroRatio{to_micro(ratio_at(conc, cfg))};
}

MicroVolts mq3_analog_volts(BreathConc conc, const Mq3Config& cfg) {
  return MicroVolts{to_micro(volts_at(conc, cfg))};
}

bool mq3_digital(MicroVolts volts, const Mq3Config& cfg) {
  return volts.value >= to_micro(cfg.threshold_volts);
}

double threshold_for_trip(BreathConc trip, const Mq3Config& cfg) {
  return volts_at(trip, cfg);
}

}  // namespace drunkguard::sensors
