#pragma once

#include "drunkguard/sim/event.hpp"
#include "drunkguard/sim/time.hpp"

#include <cstdint>
#include <deque>
#include <optional>
#include <stdexcept>
#include <string_view>
#include <vector>

namespace drunkguard::sensors {

using sim::EyeLabel;

struct EyeStreamConfig {
  int fps = 10;
  sim::Micros perclos_window = 60'000'000;
  sim::Micros closure_threshold = 1'500'000;
  std::int64_t perclos_threshold_ppm = 150'000;

  void validate() const;
};

/// Timestamped per-frame eye labels covering at least one PERCLOS window.
class EyeStream {
 public:
  struct Frame {
    sim::SimTime at;
    EyeLabel label;
  };

  explicit EyeStream(EyeStreamConfig cfg = {});

  /// Appends one frame. Frames must arrive in non-decreasing time order.
  void push(sim::SimTime at, EyeLabel label);
  void clear() { frames_.clear(); }

  [[nodiscard]] const EyeStreamConfig& config() const { return cfg_; }
  [[nodiscard]] const std::deque<Frame>& frames() const { return frames_; }
  [[nodiscard]] std::size_t capacity() const { return capacity_; }

 private:
  EyeStreamConfig cfg_;
  std::size_t capacity_;
  std::deque<Frame> frames_;
};

struct DrowsinessReading {
  std::size_t closed_run = 0;  // trailing Closed/NoFace frames
  std::size_t closed = 0;      // PERCLOS numerator
  std::size_t open = 0;        // PERCLOS denominator is closed + open
  bool drowsy = false;
};

/// Closure-run OR PERCLOS rule over frames in [now - perclos_window, now].
/// NoFace extends the closure run but is excluded from PERCLOS.
/// nullopt when the window holds no frames.
[[nodiscard]] std::optional<DrowsinessReading> assess_drowsiness(const EyeStream& stream,
                                                                 sim::SimTime now);

[[nodiscard]] inline std::optional<bool> drowsy_flag(const EyeStream& stream, sim::SimTime now) {
  if (auto r = assess_drowsiness(stream, now)) {
    return r->drowsy;
  }
  return std::nullopt;
}

/// Frame-label stream produced by an external face/eye detector:
///   fps=<n>
///   <frame-index>,<O|C|N>
/// Indices start at 0 and increase by one per line.
struct FrameLabels {
  int fps = 0;
  std::vector<EyeLabel> labels;
};

class FrameLabelError : public std::runtime_error {
 public:
  FrameLabelError(std::size_t line, const std::string& what);
  [[nodiscard]] std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

[[nodiscard]] FrameLabels parse_frame_labels(std::string_view text);

/// Capture time of frame `index` at `fps`, floor(index * 1e6 / fps).
[[nodiscard]] constexpr sim::SimTime frame_time(std::int64_t index, int fps) {
  return sim::SimTime(index * sim::kMicrosPerSecond / fps);
}

}  // namespace drunkguard::sensors
