#include "drunkguard/harness/config.hpp"

#include "drunkguard/harness/decimal.hpp"
#include "drunkguard/telemetry/http_update.hpp"
#include "drunkguard/telemetry/mqtt.hpp"

#include <charconv>
#include <cmath>

namespace drunkguard::harness {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view want) {
  throw ConfigError("invalid value '" + std::string(value) + "' for " + std::string(key) +
                    " (expected " + std::string(want) + ")");
}

std::int64_t to_int(std::string_view key, std::string_view v) {
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) bad_value(key, v, "integer");
  return out;
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  std::uint64_t out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size()) {
    bad_value(key, v, "unsigned integer");
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  double out = 0;
  auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out)) {
    bad_value(key, v, "number");
  }
  return out;
}

net::Address to_address(std::string_view key, std::string_view v) {
  try {
    return net::parse_address(v);
  } catch (const std::invalid_argument&) {
    bad_value(key, v, "host:port");
  }
}

void require_positive(bool ok, const char* what) {
  if (!ok) throw ConfigError(std::string(what) + " must be positive");
}

}  // namespace

void apply_setting(RunConfig& c, std::string_view key, std::string_view value) {
  key = trim(key);
  value = trim(value);
  auto& mq3 = c.sensors.mq3;
  auto& eyes = c.sensors.eyes;

  if (key == "policy") {
    try {
      c.policy = fusion::parse_policy(value);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "debounce") {
    c.debounce_n = static_cast<int>(to_int(key, value));
  } else if (key == "eval_period_us") {
    c.eval_period = to_int(key, value);
  } else if (key == "seed") {
    c.seed = to_uint(key, value);
  } else if (key == "mq3.r0_ohms") {
    mq3.r0_ohms = to_double(key, value);
  } else if (key == "mq3.load_ohms") {
    mq3.load_ohms = to_double(key, value);
  } else if (key == "mq3.supply_volts") {
    mq3.supply_volts = to_double(key, value);
  } else if (key == "mq3.curve_a") {
    mq3.curve_a = to_double(key, value);
  } else if (key == "mq3.curve_b") {
    mq3.curve_b = to_double(key, value);
  } else if (key == "mq3.threshold_volts") {
    c.mq3_threshold_volts = to_double(key, value);
  } else if (key == "mq3.trip_mg_l") {
    const auto micro = parse_micro_decimal(value);
    if (!micro) bad_value(key, value, "mg/L decimal");
    c.mq3_trip = sensors::BreathConc{*micro};
  } else if (key == "heart.threshold_milli_bpm") {
    c.sensors.heart_threshold = sensors::MilliBpm{to_int(key, value)};
  } else if (key == "heart.window_us") {
    c.sensors.pulse_window = to_int(key, value);
  } else if (key == "eyes.fps") {
    eyes.fps = static_cast<int>(to_int(key, value));
  } else if (key == "eyes.perclos_window_us") {
    eyes.perclos_window = to_int(key, value);
  } else if (key == "eyes.closure_threshold_us") {
    eyes.closure_threshold = to_int(key, value);
  } else if (key == "eyes.perclos_threshold_ppm") {
    eyes.perclos_threshold_ppm = to_int(key, value);
  } else if (key == "telemetry.host") {
    c.telemetry = to_address(key, value);
  } else if (key == "telemetry.api_key") {
    c.api_key = std::string(value);
  } else if (key == "telemetry.topic") {
    c.topic = std::string(value);
  } else if (key == "app.host") {
    c.app = to_address(key, value);
  } else if (key.substr(0, 8) == "contact." && key.size() > 8) {
    try {
      c.contacts.add(alert::Contact{std::string(key.substr(8)), to_address(key, value)});
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  } else if (key == "retry.attempts") {
    c.retry.attempts = static_cast<int>(to_int(key, value));
  } else if (key == "retry.base_us") {
    c.retry.base_backoff = to_int(key, value);
  } else if (key == "noise.pulse_jitter_us") {
    c.pulse_jitter = to_int(key, value);
  } else if (key == "noise.breath_jitter_micro_mg_l") {
    c.breath_jitter = to_int(key, value);
  } else {
    throw ConfigError("unknown config key '" + std::string(key) + "'");
  }
}

void apply_config_text(RunConfig& config, std::string_view text) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("line " + std::to_string(line_no) + ": expected key = value");
    }
    try {
      apply_setting(config, line.substr(0, eq), line.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError("line " + std::to_string(line_no) + ": " + e.what());
    }
  }
}

void RunConfig::finalize() {
  require_positive(debounce_n > 0, "debounce");
  require_positive(eval_period > 0, "eval_period_us");
  require_positive(sensors.heart_threshold.value > 0, "heart.threshold_milli_bpm");
  require_positive(sensors.pulse_window > 0, "heart.window_us");
  require_positive(mq3_trip.value > 0, "mq3.trip_mg_l");
  require_positive(retry.attempts > 0, "retry.attempts");
  if (retry.attempts > 16) throw ConfigError("retry.attempts must be at most 16");
  require_positive(retry.base_backoff > 0, "retry.base_us");
  if (pulse_jitter < 0 || breath_jitter < 0) {
    throw ConfigError("noise jitter must not be negative");
  }
  try {
    sensors.eyes.validate();
    sensors.mq3.threshold_volts = mq3_threshold_volts.value_or(
        sensors::threshold_for_trip(mq3_trip, sensors.mq3));
    sensors.mq3.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  try {
    telemetry::ChannelUpdate probe;
    probe.api_key = api_key;
    (void)telemetry::encode_http_update(probe, "check");
  } catch (const telemetry::EncodeError&) {
    throw ConfigError("telemetry.api_key must be 1-32 letters or digits");
  }
  try {
    (void)telemetry::encode_publish(telemetry::PublishPacket{topic, {}});
  } catch (const telemetry::EncodeError& e) {
    throw ConfigError(std::string("telemetry.topic: ") + e.what());
  }
}

}  // namespace drunkguard::harness
