#include "bundler/datapath/scheduler.h"

#include <algorithm>
#include <cassert>

#include "bundler/datapath/drr.h"

namespace bundler::datapath {

std::string_view ToString(SchedulerKind k) {
  switch (k) {
    case SchedulerKind::kFifo:
      return "fifo";
    case SchedulerKind::kSfq:
      return "sfq";
    case SchedulerKind::kPrio:
      return "prio";
    case SchedulerKind::kFqCodel:
      return "fq_codel";
  }
  return "?";
}

std::optional<SchedulerKind> ParseSchedulerKind(std::string_view s) {
  for (auto k : {SchedulerKind::kFifo, SchedulerKind::kSfq, SchedulerKind::kPrio,
                 SchedulerKind::kFqCodel}) {
    if (ToString(k) == s) return k;
  }
  return std::nullopt;
}

std::unique_ptr<Scheduler> MakeScheduler(const SchedulerConfig& config) {
  switch (config.kind) {
    case SchedulerKind::kFifo:
      return std::make_unique<FifoScheduler>(config.buffer_packets);
    case SchedulerKind::kSfq:
      return std::make_unique<DrrScheduler>(config, false);
    case SchedulerKind::kPrio:
      return std::make_unique<PrioScheduler>(config.classes, config.buffer_packets);
    case SchedulerKind::kFqCodel:
      return std::make_unique<DrrScheduler>(config, true);
  }
  return nullptr;
}

bool FifoScheduler::Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) {
  if (queue_.size() >= cap_) {
    dropped.push_back(p);
    dropped.back().enqueue_time = now;
    return false;
  }
  queue_.push_back(p);
  queue_.back().enqueue_time = now;
  bytes_ += p.size;
  return true;
}

const Packet* FifoScheduler::Head(TimeSec, std::vector<Packet>&) {
  return queue_.empty() ? nullptr : &queue_.front();
}

Packet FifoScheduler::Pop() {
  assert(!queue_.empty());
  Packet p = std::move(queue_.front());
  queue_.pop_front();
  bytes_ -= p.size;
  return p;
}

PrioScheduler::PrioScheduler(int classes, size_t buffer_packets)
    : cap_(buffer_packets), classes_(static_cast<size_t>(std::max(classes, 1))) {}

bool PrioScheduler::Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) {
  if (count_ >= cap_) {
    dropped.push_back(p);
    dropped.back().enqueue_time = now;
    return false;
  }
  const size_t c = std::min<size_t>(p.traffic_class, classes_.size() - 1);
  classes_[c].push_back(p);
  classes_[c].back().enqueue_time = now;
  ++count_;
  bytes_ += p.size;
  return true;
}

const Packet* PrioScheduler::Head(TimeSec, std::vector<Packet>&) {
  for (size_t c = 0; c < classes_.size(); ++c) {
    if (!classes_[c].empty()) {
      selected_ = c;
      return &classes_[c].front();
    }
  }
  selected_.reset();
  return nullptr;
}

Packet PrioScheduler::Pop() {
  assert(selected_ && !classes_[*selected_].empty());
  auto& q = classes_[*selected_];
  Packet p = std::move(q.front());
  q.pop_front();
  --count_;
  bytes_ -= p.size;
  selected_.reset();
  return p;
}

}  // namespace bundler::datapath
