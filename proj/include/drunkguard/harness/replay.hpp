#pragma once

#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/harness/event_log.hpp"

#include <optional>
#include <string>
#include <vector>

namespace drunkguard::harness {

struct ReplayOptions {
  /// Used when the log carries no session record.
  fusion::Policy policy = fusion::Policy::CountAtLeastTwo;
  int debounce_n = fusion::kDefaultDebounce;
};

struct ReplayReport {
  bool ok = true;
  std::size_t decisions = 0;
  std::optional<sim::SimTime> divergence;
  std::string message;
};

/// Re-derives every Decision (and the Commands that follow it) from the
/// logged Flags records and reset events, and checks timestamps never go
/// backwards. Stops at the first divergence.
[[nodiscard]] ReplayReport replay(const std::vector<LogRecord>& records,
                                  const ReplayOptions& options = {});

}  // namespace drunkguard::harness
