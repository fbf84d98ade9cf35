#include "drunkguard/sensors/pulse.hpp"

#include <stdexcept>

namespace drunkguard::sensors {

__extension__ using Wide = __int128;

PulseWindow::PulseWindow(sim::Micros window) : window_(window) {
  if (window <= 0) {
    throw std::invalid_argument("pulse window must be positive");
  }
}

bool PulseWindow::add_edge(sim::SimTime t) {
  if (!edges_.empty() && t <= edges_.back()) {
    return false;
  }
  edges_.push_back(t);
  return true;
}

void PulseWindow::advance(sim::SimTime now) {
  const sim::Micros oldest = now.micros() - window_;
  while (!edges_.empty() && edges_.front().micros() < oldest) {
    edges_.pop_front();
  }
}

std::optional<MilliBpm> bpm(const PulseWindow& window) {
  const auto& edges = window.edges();
  if (edges.size() < 2) {
    return std::nullopt;
  }
  // milli-BPM = 60e9 / (span / intervals) = 60e9 * intervals / span
  const auto intervals = static_cast<Wide>(edges.size() - 1);
  const auto span = static_cast<Wide>(edges.back() - edges.front());
  const Wide num = static_cast<Wide>(60'000'000'000) * intervals;
  return MilliBpm{static_cast<std::int64_t>((2 * num + span) / (2 * span))};
}

}  // namespace drunkguard::sensors
