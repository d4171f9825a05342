#ifndef BUNDLER_MIDDLEBOX_SENDBOX_H_
#define BUNDLER_MIDDLEBOX_SENDBOX_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bundler/control/rate_controller.h"
#include "bundler/datapath/datapath.h"
#include "bundler/measurement/epoch_measurement.h"
#include "bundler/middlebox/bundle.h"
#include "bundler/middlebox/wire.h"

namespace bundler::middlebox {

struct SendboxDiagnostics {
  uint64_t bypassed_packets = 0;
  uint64_t feedback_received = 0;
  uint64_t feedback_malformed = 0;
  uint64_t feedback_unknown_bundle = 0;
  uint64_t feedback_unexpected_type = 0;
  uint64_t epoch_updates_sent = 0;
  uint64_t ticks = 0;
};

// Sender-side box. Packets of a bundle are queued in that bundle's datapath
// and paced out at the controller's rate; everything else passes through.
// Measurement happens as packets leave, so the recorded send times exclude
// the time spent queued here.
class Sendbox {
 public:
  enum class Verdict { kBypass, kQueued, kDropped };

  struct Bundle {
    BundleSpec spec;
    measurement::EpochMeasurement measurement;
    control::RateController controller;
    datapath::Datapath datapath;
  };

  Sendbox(const BundleTable& table, measurement::MeasurementConfig mcfg, TimeSec now);

  // Step 1: classify and queue. Never modifies the packet.
  Verdict OnPacket(const Packet& p, TimeSec now);

  // Step 2: release the next paced packet of bundle `i`, if eligible.
  std::optional<Packet> Dequeue(size_t i, TimeSec now);
  std::optional<TimeSec> NextEligibleTime(size_t i, TimeSec now);

  // Step 5: a message from a receivebox.
  void OnFeedback(std::span<const uint8_t> msg, TimeSec now);

  // Steps 6-8: run every controller, apply rates, and return any epoch
  // updates to send to the receivebox, already encoded.
  std::vector<std::vector<uint8_t>> Tick(TimeSec now);

  // Models a box crash: queued packets are lost (and returned) and from
  // then on every packet bypasses the box.
  std::vector<Packet> Fail(TimeSec now);
  bool failed() const { return failed_; }

  size_t size() const { return bundles_.size(); }
  Bundle& bundle(size_t i) { return *bundles_[i]; }
  const Bundle& bundle(size_t i) const { return *bundles_[i]; }
  const BundleTable& table() const { return table_; }
  const SendboxDiagnostics& diagnostics() const { return diag_; }

 private:
  BundleTable table_;
  std::vector<std::unique_ptr<Bundle>> bundles_;
  SendboxDiagnostics diag_;
  bool failed_ = false;
};

}  // namespace bundler::middlebox

#endif  // BUNDLER_MIDDLEBOX_SENDBOX_H_
