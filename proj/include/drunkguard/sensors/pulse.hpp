#pragma once

#include "drunkguard/sensors/quantity.hpp"
#include "drunkguard/sim/time.hpp"

#include <deque>
#include <optional>

namespace drunkguard::sensors {

inline constexpr sim::Micros kDefaultPulseWindow = 8'000'000;
inline constexpr MilliBpm kDefaultHeartThreshold{72'000};

/// Sliding window of rising PPG pulse edges.
class PulseWindow {
 public:
  explicit PulseWindow(sim::Micros window = kDefaultPulseWindow);

  /// Appends an edge. Returns false (and ignores it) unless the edge is later
  /// than the previous one.
  bool add_edge(sim::SimTime t);

  /// Drops edges older than now - window.
  void advance(sim::SimTime now);

  void clear() { edges_.clear(); }

  [[nodiscard]] const std::deque<sim::SimTime>& edges() const { return edges_; }
  [[nodiscard]] sim::Micros window() const { return window_; }

 private:
  sim::Micros window_;
  std::deque<sim::SimTime> edges_;
};

/// Rate from the mean inter-edge interval, 60e9 / mean_us in milli-BPM,
/// rounded half up. nullopt when fewer than two edges are held.
[[nodiscard]] std::optional<MilliBpm> bpm(const PulseWindow& window);

/// True iff the rate is strictly above the threshold.
[[nodiscard]] constexpr bool heart_flag(MilliBpm rate,
                                        MilliBpm threshold = kDefaultHeartThreshold) {
  return rate > threshold;
}

}  // namespace drunkguard::sensors
