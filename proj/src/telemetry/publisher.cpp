#include "drunkguard/telemetry/publisher.hpp"

#include <stdexcept>

namespace drunkguard::telemetry {

PublishResult publish_with_retry(std::span<const std::uint8_t> bytes, const net::Address& to,
                                 net::Transport& transport, sim::SimTime start,
                                 const RetryPolicy& policy) {
  if (policy.attempts < 1) {
    throw std::invalid_argument("retry attempts must be >= 1");
  }
  PublishResult result;
  sim::SimTime at = start;
  sim::Micros backoff = policy.base_backoff;
  for (int attempt = 1; attempt <= policy.attempts; ++attempt) {
    result.attempts = attempt;
    result.attempt_times.push_back(at);
    const net::SendOutcome outcome = transport.send(to, bytes);
    if (outcome.ok) {
      result.delivered = true;
      result.last_error.clear();
      return result;
    }
    result.last_error = outcome.error;
    at = at + backoff;
    backoff *= 2;
  }
  return result;
}

sim::Micros retry_horizon(const RetryPolicy& policy) {
  return policy.base_backoff * ((sim::Micros{1} << policy.attempts) - 1);
}

NetWorker::NetWorker(net::Transport& transport)
    : transport_(transport), thread_([this] { loop(); }) {}

NetWorker::~NetWorker() {
  {
    std::lock_guard lock(mutex_);
    stopping_ = true;
  }
  cv_.notify_all();
  thread_.join();
}

std::future<PublishResult> NetWorker::submit(net::Bytes bytes, net::Address to,
                                             sim::SimTime start, RetryPolicy policy) {
  std::packaged_task<PublishResult()> task(
      [this, bytes = std::move(bytes), to = std::move(to), start, policy] {
        return publish_with_retry(bytes, to, transport_, start, policy);
      });
  auto future = task.get_future();
  {
    std::lock_guard lock(mutex_);
    jobs_.push_back(std::move(task));
  }
  cv_.notify_one();
  return future;
}

void NetWorker::loop() {
  for (;;) {
    std::packaged_task<PublishResult()> job;
    {
      std::unique_lock lock(mutex_);
      cv_.wait(lock, [this] { return stopping_ || !jobs_.empty(); });
      if (jobs_.empty()) return;  // stopping with nothing left
      job = std::move(jobs_.front());
      jobs_.pop_front();
    }
    job();
  }
}

}  // namespace drunkguard::telemetry
