#ifndef BUNDLER_MIDDLEBOX_RECEIVEBOX_H_
#define BUNDLER_MIDDLEBOX_RECEIVEBOX_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bundler/middlebox/bundle.h"
#include "bundler/middlebox/wire.h"

namespace bundler::middlebox {

struct ReceiveboxDiagnostics {
  uint64_t bypassed_packets = 0;
  uint64_t acks_sent = 0;
  uint64_t updates_applied = 0;
  uint64_t feedback_malformed = 0;
  uint64_t feedback_rejected = 0;  // unknown bundle, wrong type or zero period
};

// Receiver-side box: counts each bundle's bytes and answers every epoch
// boundary with a congestion ACK. Packets are observed, never held.
class Receivebox {
 public:
  Receivebox(const BundleTable& table, uint64_t initial_sampling_period = 1);

  // Steps 3-4. Returns the encoded ACK when `p` is a boundary.
  std::optional<std::vector<uint8_t>> OnPacket(const Packet& p, TimeSec now);

  // Epoch-size update from the sendbox. Idempotent.
  void OnFeedback(std::span<const uint8_t> msg);

  void Fail() { failed_ = true; }
  bool failed() const { return failed_; }

  uint64_t bytes_received(size_t i) const { return state_[i].bytes_rcvd; }
  uint64_t sampling_period(size_t i) const { return state_[i].sampling_period; }
  const BundleTable& table() const { return table_; }
  const ReceiveboxDiagnostics& diagnostics() const { return diag_; }

 private:
  struct BundleState {
    uint64_t bytes_rcvd = 0;
    uint64_t sampling_period = 1;
  };

  BundleTable table_;
  std::vector<BundleState> state_;
  ReceiveboxDiagnostics diag_;
  bool failed_ = false;
};

}  // namespace bundler::middlebox

#endif  // BUNDLER_MIDDLEBOX_RECEIVEBOX_H_
