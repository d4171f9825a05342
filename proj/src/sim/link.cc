#include "bundler/sim/link.h"

namespace bundler::sim {

Link::Link(EventQueue& events, LinkConfig config, DeliverFn deliver, DropFn drop,
           ObserveFn observe)
    : events_(events),
      config_(config),
      queue_(datapath::MakeScheduler(config.queue)),
      deliver_(std::move(deliver)),
      drop_(std::move(drop)),
      observe_(std::move(observe)) {}

void Link::Send(const Packet& p) {
  queue_->Enqueue(p, events_.now(), scratch_);
  Account(scratch_);
  if (!busy_) StartNext();
}

void Link::StartNext() {
  const TimeSec now = events_.now();
  const Packet* head = queue_->Head(now, scratch_);
  Account(scratch_);
  if (head == nullptr) {
    busy_ = false;
    return;
  }
  busy_ = true;
  Packet p = queue_->Pop();
  if (observe_) observe_(p, now - p.enqueue_time);
  const double tx = 8.0 * p.size / config_.bandwidth;
  events_.Schedule(now + tx, [this, p = std::move(p)]() mutable {
    ++propagating_;
    events_.ScheduleIn(config_.delay, [this, p = std::move(p)]() mutable {
      --propagating_;
      ++delivered_packets_;
      delivered_bytes_ += p.size;
      deliver_(std::move(p));
    });
    StartNext();
  });
}

void Link::Account(std::vector<Packet>& dropped) {
  for (const Packet& d : dropped) {
    ++dropped_packets_;
    if (drop_) drop_(d);
  }
  dropped.clear();
}

}  // namespace bundler::sim
