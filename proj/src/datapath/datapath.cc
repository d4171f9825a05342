#include "bundler/datapath/datapath.h"

#include <cassert>

namespace bundler::datapath {

Datapath::Datapath(const DatapathConfig& config, TimeSec now)
    : scheduler_(MakeScheduler(config.scheduler)),
      bucket_(config.initial_rate, config.bucket_depth, now) {
  assert(config.bucket_depth >= kMtuBytes);
}

void Datapath::Account(std::vector<Packet>& dropped) {
  for (auto& p : dropped) {
    if (auto it = enqueue_times_.find(p.enqueue_time); it != enqueue_times_.end()) {
      enqueue_times_.erase(it);
    }
    ++counters_.dropped;
    drops_.push_back(std::move(p));
  }
  dropped.clear();
}

bool Datapath::Enqueue(const Packet& p, TimeSec now) {
  ++counters_.enqueued;
  enqueue_times_.insert(now);
  const bool accepted = scheduler_->Enqueue(p, now, scratch_);
  Account(scratch_);
  return accepted;
}

std::optional<Packet> Datapath::Dequeue(TimeSec now) {
  const Packet* head = scheduler_->Head(now, scratch_);
  Account(scratch_);
  if (head == nullptr) return std::nullopt;
  if (!bucket_.TryConsume(head->size, now)) return std::nullopt;
  Packet p = scheduler_->Pop();
  enqueue_times_.erase(enqueue_times_.find(p.enqueue_time));
  ++counters_.dequeued;
  counters_.dequeued_bytes += p.size;
  return p;
}

std::optional<TimeSec> Datapath::NextEligibleTime(TimeSec now) {
  const Packet* head = scheduler_->Head(now, scratch_);
  Account(scratch_);
  if (head == nullptr) return std::nullopt;
  return now + bucket_.TimeUntil(head->size, now);
}

void Datapath::SetRate(double rate_bps, TimeSec now) { bucket_.SetRate(rate_bps, now); }

double Datapath::QueueDelay(TimeSec now) const {
  if (enqueue_times_.empty()) return 0.0;
  return now - *enqueue_times_.begin();
}

std::vector<Packet> Datapath::Flush(TimeSec now) {
  std::vector<Packet> out;
  while (scheduler_->Head(now, scratch_) != nullptr) out.push_back(scheduler_->Pop());
  Account(scratch_);
  for (const auto& p : out) enqueue_times_.erase(enqueue_times_.find(p.enqueue_time));
  counters_.dropped += out.size();
  return out;
}

std::vector<Packet> Datapath::TakeDrops() {
  std::vector<Packet> out;
  out.swap(drops_);
  return out;
}

}  // namespace bundler::datapath
