#ifndef BUNDLER_DATAPATH_DATAPATH_H_
#define BUNDLER_DATAPATH_DATAPATH_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "bundler/datapath/scheduler.h"
#include "bundler/datapath/token_bucket.h"

namespace bundler::datapath {

struct DatapathConfig {
  SchedulerConfig scheduler;
  double initial_rate = 12e6;  // bits/sec
  double bucket_depth = 2.0 * kMtuBytes;
};

struct DatapathCounters {
  uint64_t enqueued = 0;
  uint64_t dequeued = 0;
  uint64_t dropped = 0;
  uint64_t dequeued_bytes = 0;
};

// The sendbox packet plane: a scheduler drained through a token-bucket
// pacer. The owner calls Dequeue() whenever something may have become
// eligible, and uses NextEligibleTime() to schedule the next attempt.
class Datapath {
 public:
  explicit Datapath(const DatapathConfig& config, TimeSec now = 0);

  bool Enqueue(const Packet& p, TimeSec now);

  // A packet if one is queued and the bucket holds enough tokens for it.
  std::optional<Packet> Dequeue(TimeSec now);

  // When the current head packet can leave; nullopt when empty.
  std::optional<TimeSec> NextEligibleTime(TimeSec now);

  void SetRate(double rate_bps, TimeSec now);

  // Sojourn of the oldest queued packet; 0 when empty.
  double QueueDelay(TimeSec now) const;

  size_t packets() const { return scheduler_->packets(); }
  uint64_t bytes() const { return scheduler_->bytes(); }
  bool empty() const { return scheduler_->empty(); }
  double rate() const { return bucket_.rate(); }
  const TokenBucket& bucket() const { return bucket_; }
  const Scheduler& scheduler() const { return *scheduler_; }
  const DatapathCounters& counters() const { return counters_; }

  // Discards every queued packet, counting them as drops. Returns them.
  std::vector<Packet> Flush(TimeSec now);

  // Packets dropped since the last call, in drop order.
  std::vector<Packet> TakeDrops();

 private:
  void Account(std::vector<Packet>& dropped);

  std::unique_ptr<Scheduler> scheduler_;
  TokenBucket bucket_;
  std::multiset<TimeSec> enqueue_times_;
  std::vector<Packet> drops_;
  std::vector<Packet> scratch_;
  DatapathCounters counters_;
};

}  // namespace bundler::datapath

#endif  // BUNDLER_DATAPATH_DATAPATH_H_
