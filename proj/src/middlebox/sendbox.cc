#include "bundler/middlebox/sendbox.h"

#include "bundler/measurement/header_hash.h"

namespace bundler::middlebox {

Sendbox::Sendbox(const BundleTable& table, measurement::MeasurementConfig mcfg, TimeSec now)
    : table_(table) {
  for (const auto& spec : table_.specs()) {
    datapath::DatapathConfig dcfg;
    dcfg.scheduler = spec.scheduler;
    dcfg.initial_rate = spec.control.initial_rate;
    bundles_.push_back(std::make_unique<Bundle>(Bundle{
        spec,
        measurement::EpochMeasurement(spec.bundle_id, mcfg),
        control::RateController(spec.control, now),
        datapath::Datapath(dcfg, now),
    }));
  }
}

Sendbox::Verdict Sendbox::OnPacket(const Packet& p, TimeSec now) {
  const auto idx = failed_ ? std::nullopt : table_.Match(p.tuple);
  if (!idx) {
    ++diag_.bypassed_packets;
    return Verdict::kBypass;
  }
  return bundles_[*idx]->datapath.Enqueue(p, now) ? Verdict::kQueued : Verdict::kDropped;
}

std::optional<Packet> Sendbox::Dequeue(size_t i, TimeSec now) {
  Bundle& b = *bundles_[i];
  auto p = b.datapath.Dequeue(now);
  if (p) b.measurement.OnPacketSent(measurement::SubsetOf(*p), p->size, now);
  return p;
}

std::optional<TimeSec> Sendbox::NextEligibleTime(size_t i, TimeSec now) {
  return bundles_[i]->datapath.NextEligibleTime(now);
}

void Sendbox::OnFeedback(std::span<const uint8_t> msg, TimeSec now) {
  if (failed_) return;
  ++diag_.feedback_received;
  FeedbackMsg decoded;
  if (Decode(msg, decoded) != DecodeError::kNone) {
    ++diag_.feedback_malformed;
    return;
  }
  const auto* ack = std::get_if<measurement::CongestionAck>(&decoded);
  if (ack == nullptr) {
    ++diag_.feedback_unexpected_type;
    return;
  }
  const auto idx = table_.IndexOf(ack->bundle_id);
  if (!idx) {
    ++diag_.feedback_unknown_bundle;
    return;
  }
  Bundle& b = *bundles_[*idx];
  if (auto sig = b.measurement.OnAck(*ack, now)) b.controller.OnSignals(*sig);
}

std::vector<std::vector<uint8_t>> Sendbox::Tick(TimeSec now) {
  std::vector<std::vector<uint8_t>> out;
  if (failed_) return out;
  ++diag_.ticks;
  for (auto& bp : bundles_) {
    Bundle& b = *bp;
    b.measurement.EvictStale(now);
    control::TickInputs in;
    in.queue_delay = b.datapath.QueueDelay(now);
    in.backlogged = !b.datapath.empty();
    in.reorder_fraction = b.measurement.reordering().Fraction();
    b.datapath.SetRate(b.controller.Tick(now, in), now);
    if (auto period = b.measurement.MaybeUpdateSamplingPeriod()) {
      out.push_back(Encode(EpochUpdate{b.spec.bundle_id, *period}));
      ++diag_.epoch_updates_sent;
    }
  }
  return out;
}

std::vector<Packet> Sendbox::Fail(TimeSec now) {
  failed_ = true;
  std::vector<Packet> lost;
  for (auto& b : bundles_) {
    auto flushed = b->datapath.Flush(now);
    lost.insert(lost.end(), flushed.begin(), flushed.end());
  }
  return lost;
}

}  // namespace bundler::middlebox
