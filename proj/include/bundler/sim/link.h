#ifndef BUNDLER_SIM_LINK_H_
#define BUNDLER_SIM_LINK_H_

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include "bundler/datapath/scheduler.h"
#include "bundler/sim/event_queue.h"

namespace bundler::sim {

struct LinkConfig {
  double bandwidth = 96e6;  // bits/sec
  double delay = 0.025;     // one-way propagation, seconds
  datapath::SchedulerConfig queue;
};

// A serializing link: a queue feeding a transmitter of fixed bandwidth,
// followed by a propagation delay. Order is preserved from dequeue to
// delivery, so the link adds no reordering beyond its scheduler's.
class Link {
 public:
  using DeliverFn = std::function<void(Packet)>;
  using DropFn = std::function<void(const Packet&)>;
  // Called as a packet starts transmission, with its time in the queue.
  using ObserveFn = std::function<void(const Packet&, double wait)>;

  Link(EventQueue& events, LinkConfig config, DeliverFn deliver, DropFn drop = {},
       ObserveFn observe = {});

  void Send(const Packet& p);

  // Packets queued, being serialized, or propagating.
  size_t queued() const { return queue_->packets(); }
  size_t in_transit() const { return (busy_ ? 1 : 0) + propagating_; }
  uint64_t queued_bytes() const { return queue_->bytes(); }
  // Time to drain the current backlog at line rate.
  double BacklogDelay() const { return 8.0 * static_cast<double>(queue_->bytes()) / config_.bandwidth; }

  uint64_t delivered_packets() const { return delivered_packets_; }
  uint64_t delivered_bytes() const { return delivered_bytes_; }
  uint64_t dropped_packets() const { return dropped_packets_; }
  const LinkConfig& config() const { return config_; }

 private:
  void StartNext();
  void Account(std::vector<Packet>& dropped);

  EventQueue& events_;
  LinkConfig config_;
  std::unique_ptr<datapath::Scheduler> queue_;
  DeliverFn deliver_;
  DropFn drop_;
  ObserveFn observe_;
  bool busy_ = false;
  size_t propagating_ = 0;
  uint64_t delivered_packets_ = 0;
  uint64_t delivered_bytes_ = 0;
  uint64_t dropped_packets_ = 0;
  std::vector<Packet> scratch_;
};

}  // namespace bundler::sim

#endif  // BUNDLER_SIM_LINK_H_
