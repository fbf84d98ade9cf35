#include "drunkguard/fusion/evaluator.hpp"

namespace drunkguard::fusion {

Evaluator::Evaluator(SensorSettings settings)
    : settings_(settings), pulses_(settings.pulse_window), eyes_(settings.eyes) {
  settings_.mq3.validate();
}

void Evaluator::clear() {
  breath_.reset();
  pulses_.clear();
  eyes_.clear();
}

Evaluation Evaluator::evaluate(sim::SimTime now) {
  Evaluation out;
  if (breath_) {
    out.breath = breath_;
    out.breath_volts = sensors::mq3_analog_volts(*breath_, settings_.mq3);
    out.flags.a = sensors::mq3_digital(*out.breath_volts, settings_.mq3);
  }

  pulses_.advance(now);
  out.bpm = sensors::bpm(pulses_);
  if (out.bpm) {
    out.flags.h = sensors::heart_flag(*out.bpm, settings_.heart_threshold);
  }

  out.eyes = sensors::assess_drowsiness(eyes_, now);
  if (out.eyes) {
    out.flags.d = out.eyes->drowsy;
  }
  return out;
}

}  // namespace drunkguard::fusion
