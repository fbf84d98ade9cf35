#pragma once

#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/sensors/eyes.hpp"
#include "drunkguard/sensors/mq3.hpp"
#include "drunkguard/sensors/pulse.hpp"

#include <optional>

namespace drunkguard::fusion {

struct SensorSettings {
  sensors::Mq3Config mq3;
  sensors::MilliBpm heart_threshold = sensors::kDefaultHeartThreshold;
  sim::Micros pulse_window = sensors::kDefaultPulseWindow;
  sensors::EyeStreamConfig eyes;
};

/// Snapshot of all three channels at one evaluation instant. Absent readings
/// leave their flag false.
struct Evaluation {
  FlagVector flags;
  std::optional<sensors::BreathConc> breath;
  std::optional<sensors::MicroVolts> breath_volts;
  std::optional<sensors::MilliBpm> bpm;
  std::optional<sensors::DrowsinessReading> eyes;
};

/// Owns the live sensor-model state and turns it into a FlagVector on demand.
class Evaluator {
 public:
  explicit Evaluator(SensorSettings settings = {});

  void on_breath(sensors::BreathConc conc) { breath_ = conc; }
  bool on_pulse(sim::SimTime at) { return pulses_.add_edge(at); }
  void on_frame(sim::SimTime at, sim::EyeLabel label) { eyes_.push(at, label); }

  /// Forgets every reading so detection starts over.
  void clear();

  [[nodiscard]] Evaluation evaluate(sim::SimTime now);

  [[nodiscard]] const SensorSettings& settings() const { return settings_; }

 private:
  SensorSettings settings_;
  std::optional<sensors::BreathConc> breath_;
  sensors::PulseWindow pulses_;
  sensors::EyeStream eyes_;
};

}  // namespace drunkguard::fusion
