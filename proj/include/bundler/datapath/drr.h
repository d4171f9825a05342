#ifndef BUNDLER_DATAPATH_DRR_H_
#define BUNDLER_DATAPATH_DRR_H_

#include <deque>
#include <list>
#include <unordered_map>

#include "bundler/datapath/codel.h"
#include "bundler/datapath/scheduler.h"

namespace bundler::datapath {

// Deficit round robin over per-flow queues. Flows map to a queue either by
// 5-tuple hash modulo `num_buckets` (stochastic fair queueing, no hash
// perturbation) or by exact 5-tuple. On overflow the tail packet of the
// queue holding the most bytes is dropped. With CoDel enabled each queue
// runs its own CoDel drop law at dequeue.
class DrrScheduler : public Scheduler {
 public:
  DrrScheduler(const SchedulerConfig& config, bool codel);

  bool Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) override;
  const Packet* Head(TimeSec now, std::vector<Packet>& dropped) override;
  Packet Pop() override;
  size_t packets() const override { return count_; }
  uint64_t bytes() const override { return bytes_; }

  size_t active_queues() const { return active_.size(); }
  uint64_t codel_drops() const { return codel_drops_; }

 private:
  struct FlowQueue {
    std::deque<Packet> packets;
    uint64_t bytes = 0;
    int64_t deficit = 0;
    bool head_cleared = false;  // CoDel already passed the current head
    CoDelState codel;
    FiveTuple tuple;
  };
  using Key = uint64_t;

  Key KeyFor(const FiveTuple& t);
  void DropTail(FlowQueue& q, Key key, std::vector<Packet>& dropped);
  void Retire(Key key);

  SchedulerConfig config_;
  bool codel_;
  std::unordered_map<Key, FlowQueue> queues_;
  std::unordered_map<FiveTuple, Key, FiveTupleHash> exact_keys_;
  Key next_exact_key_ = 0;
  std::list<Key> active_;  // round-robin order; front is being served
  size_t count_ = 0;
  uint64_t bytes_ = 0;
  uint64_t codel_drops_ = 0;
};

}  // namespace bundler::datapath

#endif  // BUNDLER_DATAPATH_DRR_H_
