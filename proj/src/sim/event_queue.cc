#include "bundler/sim/event_queue.h"

#include <algorithm>

namespace bundler::sim {

void EventQueue::Schedule(TimeSec t, Callback cb) {
  heap_.push(Event{std::max(t, now_), next_seq_++, std::move(cb)});
}

bool EventQueue::RunNext() {
  if (heap_.empty()) return false;
  // priority_queue::top is const; the callback is moved out before popping.
  Event ev = std::move(const_cast<Event&>(heap_.top()));
  heap_.pop();
  now_ = ev.time;
  ++executed_;
  ev.cb();
  return true;
}

void EventQueue::RunUntil(TimeSec end) {
  while (!heap_.empty() && heap_.top().time <= end) RunNext();
  now_ = std::max(now_, end);
}

void EventQueue::RunWhile(TimeSec end, const std::function<bool()>& keep_going) {
  while (!heap_.empty() && heap_.top().time <= end) {
    RunNext();
    if (!keep_going()) return;
  }
  if (heap_.empty() || heap_.top().time > end) now_ = std::max(now_, end);
}

}  // namespace bundler::sim
