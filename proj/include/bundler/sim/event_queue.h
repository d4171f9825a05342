#ifndef BUNDLER_SIM_EVENT_QUEUE_H_
#define BUNDLER_SIM_EVENT_QUEUE_H_

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

#include "bundler/packet.h"

namespace bundler::sim {

// Discrete-event scheduler. Events run in (time, sequence) order, where the
// sequence is the order in which they were scheduled, so a run is fully
// determined by its inputs.
class EventQueue {
 public:
  using Callback = std::function<void()>;

  // `t` earlier than now() is treated as now().
  void Schedule(TimeSec t, Callback cb);
  void ScheduleIn(TimeSec delay, Callback cb) { Schedule(now_ + delay, std::move(cb)); }

  // Runs the earliest event. Returns false when none is left.
  bool RunNext();
  // Runs every event with time <= `end`, then advances the clock to `end`.
  void RunUntil(TimeSec end);
  // Runs until `done()` holds after an event, the queue drains, or `end`.
  void RunWhile(TimeSec end, const std::function<bool()>& keep_going);

  TimeSec now() const { return now_; }
  size_t pending() const { return heap_.size(); }
  uint64_t executed() const { return executed_; }

 private:
  struct Event {
    TimeSec time;
    uint64_t seq;
    Callback cb;
  };
  struct Later {
    bool operator()(const Event& a, const Event& b) const {
      return a.time != b.time ? a.time > b.time : a.seq > b.seq;
    }
  };

  std::priority_queue<Event, std::vector<Event>, Later> heap_;
  TimeSec now_ = 0;
  uint64_t next_seq_ = 0;
  uint64_t executed_ = 0;
};

}  // namespace bundler::sim

#endif  // BUNDLER_SIM_EVENT_QUEUE_H_
