#ifndef BUNDLER_DATAPATH_SCHEDULER_H_
#define BUNDLER_DATAPATH_SCHEDULER_H_

#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "bundler/packet.h"

namespace bundler::datapath {

enum class SchedulerKind { kFifo, kSfq, kPrio, kFqCodel };

std::string_view ToString(SchedulerKind k);
std::optional<SchedulerKind> ParseSchedulerKind(std::string_view s);

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::kFifo;
  size_t buffer_packets = 500;
  // DRR-based policies.
  size_t num_buckets = 1024;
  uint32_t quantum = kMtuBytes;
  // Key DRR queues on the exact 5-tuple instead of a hash bucket.
  bool exact_flows = false;
  // Strict priority: class 0 is served first; traffic_class is clamped.
  int classes = 2;
  double codel_target = 0.005;
  double codel_interval = 0.100;
};

// Queueing discipline behind the pacer. Head() picks the packet that would
// leave next, applying any dequeue-time drop law; the pacer may look at it
// several times while it waits for tokens. Pop() removes the packet returned
// by the most recent Head().
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  // Stamps the packet's enqueue_time with `now`. Returns false if `p` itself
  // was dropped. Every dropped packet, `p` included, is appended to
  // `dropped` carrying its enqueue stamp.
  virtual bool Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) = 0;

  virtual const Packet* Head(TimeSec now, std::vector<Packet>& dropped) = 0;

  // Removes the packet last returned by Head(). Requires a non-null Head().
  virtual Packet Pop() = 0;

  virtual size_t packets() const = 0;
  virtual uint64_t bytes() const = 0;
  bool empty() const { return packets() == 0; }
};

std::unique_ptr<Scheduler> MakeScheduler(const SchedulerConfig& config);

class FifoScheduler : public Scheduler {
 public:
  explicit FifoScheduler(size_t buffer_packets) : cap_(buffer_packets) {}

  bool Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) override;
  const Packet* Head(TimeSec now, std::vector<Packet>& dropped) override;
  Packet Pop() override;
  size_t packets() const override { return queue_.size(); }
  uint64_t bytes() const override { return bytes_; }

 private:
  size_t cap_;
  std::deque<Packet> queue_;
  uint64_t bytes_ = 0;
};

// Strict priority over FIFO classes with a shared drop-tail buffer.
class PrioScheduler : public Scheduler {
 public:
  PrioScheduler(int classes, size_t buffer_packets);

  bool Enqueue(const Packet& p, TimeSec now, std::vector<Packet>& dropped) override;
  const Packet* Head(TimeSec now, std::vector<Packet>& dropped) override;
  Packet Pop() override;
  size_t packets() const override { return count_; }
  uint64_t bytes() const override { return bytes_; }

 private:
  size_t cap_;
  std::vector<std::deque<Packet>> classes_;
  std::optional<size_t> selected_;
  size_t count_ = 0;
  uint64_t bytes_ = 0;
};

}  // namespace bundler::datapath

#endif  // BUNDLER_DATAPATH_SCHEDULER_H_
