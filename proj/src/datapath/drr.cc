#include "bundler/datapath/drr.h"

#include <algorithm>
#include <cassert>

namespace bundler::datapath {

DrrScheduler::DrrScheduler(const SchedulerConfig& config, bool codel)
    : config_(config), codel_(codel) {
  assert(config.num_buckets > 0 && config.quantum > 0);
}

DrrScheduler::Key DrrScheduler::KeyFor(const FiveTuple& t) {
  if (!config_.exact_flows) return HashFiveTuple(t) % config_.num_buckets;
  auto [it, inserted] = exact_keys_.try_emplace(t, next_exact_key_);
  if (inserted) ++next_exact_key_;
  return it->second;
}

bool DrrScheduler::Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) {
  const Key key = KeyFor(p.tuple);
  FlowQueue& q = queues_[key];
  if (q.packets.empty()) {
    q.tuple = p.tuple;
    q.deficit = config_.quantum;
    q.head_cleared = false;
    active_.push_back(key);
  }
  q.packets.push_back(p);
  q.packets.back().enqueue_time = now;
  q.bytes += p.size;
  ++count_;
  bytes_ += p.size;

  if (count_ <= config_.buffer_packets) return true;
  auto longest = std::max_element(active_.begin(), active_.end(), [this](Key a, Key b) {
    return queues_.at(a).bytes < queues_.at(b).bytes;
  });
  const Key victim = *longest;
  const bool self = victim == key;
  DropTail(queues_.at(victim), victim, dropped);
  return !self;
}

void DrrScheduler::DropTail(FlowQueue& q, Key key, std::vector<Packet>& dropped) {
  dropped.push_back(std::move(q.packets.back()));
  q.packets.pop_back();
  q.bytes -= dropped.back().size;
  --count_;
  bytes_ -= dropped.back().size;
  if (q.packets.empty()) Retire(key);
}

void DrrScheduler::Retire(Key key) {
  active_.remove(key);
  FlowQueue& q = queues_.at(key);
  q.codel.OnEmpty();
  q.deficit = 0;
  if (config_.exact_flows) {
    exact_keys_.erase(q.tuple);
    queues_.erase(key);
  }
}

const Packet* DrrScheduler::Head(TimeSec now, std::vector<Packet>& dropped) {
  const CoDelParams params{config_.codel_target, config_.codel_interval, kMtuBytes};
  while (!active_.empty()) {
    const Key key = active_.front();
    FlowQueue& q = queues_.at(key);
    if (codel_ && !q.head_cleared) {
      while (!q.packets.empty()) {
        const Packet& head = q.packets.front();
        if (!q.codel.ShouldDrop(now, now - head.enqueue_time, q.bytes - head.size, params)) {
          q.head_cleared = true;
          break;
        }
        q.bytes -= head.size;
        --count_;
        bytes_ -= head.size;
        ++codel_drops_;
        dropped.push_back(std::move(q.packets.front()));
        q.packets.pop_front();
      }
      if (q.packets.empty()) {
        Retire(key);
        continue;
      }
    }
    if (q.deficit >= static_cast<int64_t>(q.packets.front().size)) return &q.packets.front();
    q.deficit += config_.quantum;
    active_.splice(active_.end(), active_, active_.begin());
  }
  return nullptr;
}

Packet DrrScheduler::Pop() {
  assert(!active_.empty());
  const Key key = active_.front();
  FlowQueue& q = queues_.at(key);
  Packet p = std::move(q.packets.front());
  q.packets.pop_front();
  q.bytes -= p.size;
  q.deficit -= p.size;
  q.head_cleared = false;
  --count_;
  bytes_ -= p.size;
  if (q.packets.empty()) Retire(key);
  return p;
}

}  // namespace bundler::datapath
