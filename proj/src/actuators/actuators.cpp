#include "drunkguard/actuators/actuators.hpp"

namespace drunkguard::actuators {

namespace {

std::string fit_row(std::string_view text) {
  std::string row(text.substr(0, kLcdColumns));
  for (char& c : row) {
    if (c < 0x20 || c > 0x7e) c = '?';
  }
  row.resize(kLcdColumns, ' ');
  return row;
}

}  // namespace

LcdFrame::LcdFrame(std::string_view row0, std::string_view row1)
    : rows_{fit_row(row0), fit_row(row1)} {}

LcdFrame render_lcd(bool alcohol_high, std::optional<sensors::MilliBpm> bpm,
                    fusion::Decision decision) {
  const std::string_view top = alcohol_high ? "ALCOHOL: HIGH" : "ALCOHOL: LOW";
  if (decision == fusion::Decision::Cutoff) {
    return LcdFrame(top, "IGNITION LOCKED");
  }
  if (!bpm) {
    return LcdFrame(top, "BPM: --");
  }
  const auto whole = bpm->value < 0 ? 0 : sensors::div_round_half_up(bpm->value, 1000);
  return LcdFrame(top, "BPM: " + std::to_string(whole));
}

}  // namespace drunkguard::actuators
