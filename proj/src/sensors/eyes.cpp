#include "drunkguard/sensors/eyes.hpp"

#include <charconv>
#include <string>

namespace drunkguard::sensors {

void EyeStreamConfig::validate() const {
  if (fps <= 0) throw std::invalid_argument("eyes.fps must be > 0");
  if (perclos_window <= 0) throw std::invalid_argument("eyes.perclos_window_us must be > 0");
  if (closure_threshold <= 0) {
    throw std::invalid_argument("eyes.closure_threshold_us must be > 0");
  }
  if (perclos_threshold_ppm <= 0) {
    throw std::invalid_argument("eyes.perclos_threshold_ppm must be > 0");
  }
}

EyeStream::EyeStream(EyeStreamConfig cfg) : cfg_(cfg) {
  cfg_.validate();
  // One extra frame so a window whose edges both land on frame times fits.
  capacity_ = static_cast<std::size_t>(
                  (cfg_.perclos_window * cfg_.fps + sim::kMicrosPerSecond - 1) /
                  sim::kMicrosPerSecond) +
              1;
}

void EyeStream::push(sim::SimTime at, EyeLabel label) {
  if (!frames_.empty() && at < frames_.back().at) {
    throw std::invalid_argument("eye frames must arrive in time order");
  }
  frames_.push_back(Frame{at, label});
  while (frames_.size() > capacity_) {
    frames_.pop_front();
  }
}

std::optional<DrowsinessReading> assess_drowsiness(const EyeStream& stream, sim::SimTime now) {
  const auto& cfg = stream.config();
  const sim::Micros oldest = now.micros() - cfg.perclos_window;

  DrowsinessReading r;
  bool run_open = true;
  std::size_t in_window = 0;
  const auto& frames = stream.frames();
  for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
    if (it->at > now) {
      continue;
    }
    if (it->at.micros() < oldest) {
      break;
    }
    ++in_window;
    switch (it->label) {
      case EyeLabel::Open:
        ++r.open;
        run_open = false;
        break;
      case EyeLabel::Closed:
        ++r.closed;
        if (run_open) ++r.closed_run;
        break;
      case EyeLabel::NoFace:
        if (run_open) ++r.closed_run;
        break;
    }
  }
  if (in_window == 0) {
    return std::nullopt;
  }

  // run_frames / fps >= threshold_us / 1e6, cross-multiplied to stay integral.
  const bool long_closure = static_cast<std::int64_t>(r.closed_run) * sim::kMicrosPerSecond >=
                            cfg.closure_threshold * cfg.fps;
  const std::int64_t seen = static_cast<std::int64_t>(r.closed + r.open);
  const bool perclos_high =
      seen > 0 && static_cast<std::int64_t>(r.closed) * 1'000'000 >= cfg.perclos_threshold_ppm * seen;
  r.drowsy = long_closure || perclos_high;
  return r;
}

FrameLabelError::FrameLabelError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

template <class Int>
bool parse_uint(std::string_view s, Int& out) {
  if (s.empty()) return false;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size() && out >= 0;
}

}  // namespace

FrameLabels parse_frame_labels(std::string_view text) {
  FrameLabels out;
  std::size_t line_no = 0;
  bool have_header = false;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) {
      continue;
    }
    if (!have_header) {
      constexpr std::string_view kPrefix = "fps=";
      if (line.substr(0, kPrefix.size()) != kPrefix ||
          !parse_uint(line.substr(kPrefix.size()), out.fps) || out.fps <= 0) {
        throw FrameLabelError(line_no, "expected header fps=<n> with n > 0");
      }
      have_header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string_view::npos) {
      throw FrameLabelError(line_no, "expected <frame-index>,<O|C|N>");
    }
    std::int64_t index = 0;
    if (!parse_uint(trim(line.substr(0, comma)), index)) {
      throw FrameLabelError(line_no, "frame index is not a non-negative integer");
    }
    if (index != static_cast<std::int64_t>(out.labels.size())) {
      throw FrameLabelError(line_no, "expected frame index " + std::to_string(out.labels.size()));
    }
    const std::string_view label = trim(line.substr(comma + 1));
    if (label == "O") {
      out.labels.push_back(EyeLabel::Open);
    } else if (label == "C") {
      out.labels.push_back(EyeLabel::Closed);
    } else if (label == "N") {
      out.labels.push_back(EyeLabel::NoFace);
    } else {
      throw FrameLabelError(line_no, "label must be O, C or N");
    }
  }
  if (!have_header) {
    throw FrameLabelError(line_no == 0 ? 1 : line_no, "missing fps=<n> header");
  }
  return out;
}

}  // namespace drunkguard::sensors
