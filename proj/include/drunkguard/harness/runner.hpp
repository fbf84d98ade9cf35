#pragma once

#include "drunkguard/fusion/engine.hpp"
#include "drunkguard/harness/config.hpp"
#include "drunkguard/harness/event_log.hpp"
#include "drunkguard/harness/scenario.hpp"
#include "drunkguard/net/transport.hpp"

#include <cstddef>

namespace drunkguard::harness {

struct RunSummary {
  EventLog log;
  bool ignition_energized = true;
  bool alarm_on = false;
  fusion::Decision final_decision = fusion::Decision::Normal;
  std::size_t evaluations = 0;
  std::size_t cutoffs = 0;
  std::size_t alerts = 0;
  std::size_t net_delivered = 0;
  std::size_t net_failed = 0;
};

/// Runs a scenario on the virtual clock: sensor events feed the channel
/// models, an evaluation tick fires every eval_period, the interlock drives
/// the relay/alarm/LCD, and telemetry and alerts go out through `transport`
/// on a background worker. Network results are collected at fixed virtual
/// deadlines so the log does not depend on how fast the network answers.
///
/// Throws ConfigError for an invalid config.
[[nodiscard]] RunSummary run(const Scenario& scenario, RunConfig config,
                             net::Transport& transport);

/// Merges a frame-label stream into a scenario as one `eyes` event per frame
/// and returns the stream's fps.
int merge_frame_labels(Scenario& scenario, std::string_view frame_label_text);

}  // namespace drunkguard::harness
