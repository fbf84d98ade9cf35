#pragma once

#include "drunkguard/sim/time.hpp"

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace drunkguard::sim {

using EventId = std::uint64_t;

class SchedulingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

template <class E>
concept TimedEvent = requires(const E& e) {
  { e.at } -> std::convertible_to<SimTime>;
};

/// Virtual-clock event queue. Events are delivered in (at, insertion) order to
/// every subscribed consumer, synchronously from run_until(). Consumers may
/// schedule further events at or after now(). Not thread-safe.
template <TimedEvent Event>
class Scheduler {
 public:
  using Consumer = std::function<void(EventId, const Event&)>;

  void subscribe(Consumer consumer) { consumers_.push_back(std::move(consumer)); }

  /// Queues an event and returns its id (1, 2, 3, ...). Once the scheduler has
  /// started running, events before now() are rejected.
  EventId schedule(Event event) {
    const SimTime at = event.at;
    if (started_ && at < now_) {
      throw SchedulingError("event at " + std::to_string(at.micros()) +
                            " us is before current time " + std::to_string(now_.micros()) +
                            " us");
    }
    const EventId id = ++last_id_;
    heap_.push_back(Entry{at, id, std::move(event)});
    std::push_heap(heap_.begin(), heap_.end(), Later{});
    return id;
  }

  /// Delivers every queued event with at <= t_end, then advances the clock to
  /// t_end. Returns the number of deliveries.
  std::size_t run_until(SimTime t_end) {
    if (t_end < now_) {
      throw SchedulingError("run_until target " + std::to_string(t_end.micros()) +
                            " us is before current time");
    }
    started_ = true;
    std::size_t delivered = 0;
    while (!heap_.empty() && heap_.front().at <= t_end) {
      std::pop_heap(heap_.begin(), heap_.end(), Later{});
      Entry entry = std::move(heap_.back());
      heap_.pop_back();
      now_ = entry.at;
      for (const auto& consumer : consumers_) {
        consumer(entry.id, entry.event);
      }
      ++delivered;
    }
    now_ = t_end;
    return delivered;
  }

  [[nodiscard]] SimTime now() const { return now_; }
  [[nodiscard]] std::size_t pending() const { return heap_.size(); }

  /// Time of the earliest queued event. Requires pending() > 0.
  [[nodiscard]] SimTime next_at() const {
    if (heap_.empty()) {
      throw SchedulingError("next_at() on empty queue");
    }
    return heap_.front().at;
  }

 private:
  struct Entry {
    SimTime at;
    EventId id;
    Event event;
  };

  struct Later {
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.at != b.at) {
        return a.at > b.at;
      }
      return a.id > b.id;
    }
  };

  std::vector<Entry> heap_;
  std::vector<Consumer> consumers_;
  SimTime now_{};
  EventId last_id_ = 0;
  bool started_ = false;
};

}  // namespace drunkguard::sim
