#pragma once

#include "drunkguard/alert/alert.hpp"
#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/fusion/evaluator.hpp"
#include "drunkguard/net/address.hpp"
#include "drunkguard/telemetry/publisher.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace drunkguard::harness {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every tunable of a simulation run. Defaults reproduce the reference
/// behaviour: count-at-least-two policy, 3-cycle debounce at 1 Hz, 72 BPM heart
/// threshold, MQ-3 comparator tripping at 0.25 mg/L.
struct RunConfig {
  fusion::Policy policy = fusion::Policy::CountAtLeastTwo;
  int debounce_n = fusion::kDefaultDebounce;
  sim::Micros eval_period = 1'000'000;

  fusion::SensorSettings sensors;
  /// Comparator trip point; turned into sensors.mq3.threshold_volts by
  /// finalize() unless mq3.threshold_volts was given explicitly.
  sensors::BreathConc mq3_trip = sensors::kDefaultTripConc;
  std::optional<double> mq3_threshold_volts;

  std::optional<net::Address> telemetry;
  std::string api_key = "DRUNKGUARD";
  std::string topic = "vehicle/telemetry";
  std::optional<net::Address> app;
  alert::ContactList contacts;
  telemetry::RetryPolicy retry;

  /// Seeds optional noise injection; with both jitters at 0 it has no effect.
  std::uint64_t seed = 0;
  sim::Micros pulse_jitter = 0;
  std::int64_t breath_jitter = 0;  // micro-mg/L

  /// Resolves derived values and checks ranges. Throws ConfigError.
  void finalize();
};

/// Applies one `key = value` setting. Throws ConfigError for unknown keys or
/// malformed values.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Reads flat `key = value` lines; `#` starts a comment. Does not finalize.
void apply_config_text(RunConfig& config, std::string_view text);

}  // namespace drunkguard::harness
