#pragma once

#include "drunkguard/net/transport.hpp"
#include "drunkguard/sim/time.hpp"

#include <condition_variable>
#include <deque>
#include <functional>
#include <future>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace drunkguard::telemetry {

struct RetryPolicy {
  int attempts = 3;
  sim::Micros base_backoff = 500'000;  // doubles after every failed attempt
};

struct PublishResult {
  bool delivered = false;
  int attempts = 0;
  std::vector<sim::SimTime> attempt_times;
  std::string last_error;
};

/// Tries up to policy.attempts deliveries. Attempt k runs at virtual time
/// start + base * (2^(k-1) - 1); no wall-clock sleeping happens.
[[nodiscard]] PublishResult publish_with_retry(std::span<const std::uint8_t> bytes,
                                               const net::Address& to, net::Transport& transport,
                                               sim::SimTime start, const RetryPolicy& policy = {});

/// Virtual time after `start` by which every attempt of a job has been made
/// and its final backoff has elapsed: base * (2^attempts - 1).
[[nodiscard]] sim::Micros retry_horizon(const RetryPolicy& policy);

/// Background sender fed by a one-way job queue, so the simulation loop never
/// waits on a socket when it submits.
class NetWorker {
 public:
  explicit NetWorker(net::Transport& transport);
  ~NetWorker();

  NetWorker(const NetWorker&) = delete;
  NetWorker& operator=(const NetWorker&) = delete;

  std::future<PublishResult> submit(net::Bytes bytes, net::Address to, sim::SimTime start,
                                    RetryPolicy policy);

 private:
  void loop();

  net::Transport& transport_;
  std::mutex mutex_;
  std::condition_variable cv_;
  std::deque<std::packaged_task<PublishResult()>> jobs_;
  bool stopping_ = false;
  std::thread thread_;
};

}  // namespace drunkguard::telemetry
