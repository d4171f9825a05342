#include "bundler/measurement/epoch_measurement.h"

#include <algorithm>
#include <cassert>

namespace bundler::measurement {

void ReorderingTracker::Record(uint64_t boundary_send_index) {
  const bool out_of_order = max_acked_ && boundary_send_index < *max_acked_;
  if (!out_of_order) max_acked_ = boundary_send_index;
  recent_.push_back(out_of_order);
  if (out_of_order) ++out_of_order_;
  while (recent_.size() > window_) {
    if (recent_.front()) --out_of_order_;
    recent_.pop_front();
  }
}

double ReorderingTracker::Fraction() const {
  if (recent_.empty()) return 0.0;
  return static_cast<double>(out_of_order_) / static_cast<double>(recent_.size());
}

EpochMeasurement::EpochMeasurement(uint32_t bundle_id, MeasurementConfig config)
    : bundle_id_(bundle_id),
      config_(config),
      sampling_period_(config.initial_sampling_period),
      mean_pkt_size_(config.initial_pkt_size),
      reordering_(config.reorder_window) {
  assert(sampling_period_ >= 1);
}

bool EpochMeasurement::OnPacketSent(const HeaderSubset& header, uint32_t size,
                                    TimeSec t) {
  bytes_sent_ += size;
  mean_pkt_size_ += config_.pkt_size_gain * (size - mean_pkt_size_);
  const uint64_t hash = HashHeader(header);
  if (!IsEpochBoundary(hash, sampling_period_)) return false;
  OnBoundarySent(hash, t, bytes_sent_);
  return true;
}

void EpochMeasurement::OnBoundarySent(uint64_t hash, TimeSec t_sent,
                                      uint64_t bytes_sent_cum) {
  EvictStale(t_sent);
  pending_.push_back({hash, t_sent, bytes_sent_cum, next_send_index_++});
  ++diag_.boundaries_recorded;
}

void EpochMeasurement::EvictStale(TimeSec now) {
  const double horizon = min_rtt_ ? config_.eviction_rtts * *min_rtt_
                                  : config_.eviction_before_min_rtt;
  while (!pending_.empty() && now - pending_.front().t_sent > horizon) {
    pending_.pop_front();
    ++diag_.evicted_records;
  }
}

void EpochMeasurement::RememberConsumed(uint64_t hash) {
  consumed_order_.push_back(hash);
  consumed_.insert(hash);
  if (consumed_order_.size() > config_.duplicate_memory) {
    consumed_.erase(consumed_.find(consumed_order_.front()));
    consumed_order_.pop_front();
  }
}

std::optional<CongestionSignals> EpochMeasurement::OnAck(const CongestionAck& ack,
                                                         TimeSec now) {
  if (ack.bundle_id != bundle_id_) {
    ++diag_.foreign_bundle_acks;
    return std::nullopt;
  }
  EvictStale(now);

  auto it = std::find_if(pending_.begin(), pending_.end(),
                         [&](const EpochBoundaryRecord& r) { return r.hash == ack.hash; });
  if (it == pending_.end()) {
    // Replays, ACKs for evicted records and ACKs sampled under a finer
    // receivebox period all land here.
    if (consumed_.contains(ack.hash)) {
      ++diag_.duplicate_acks;
    } else {
      ++diag_.unmatched_acks;
    }
    return std::nullopt;
  }
  const EpochBoundaryRecord rec = *it;
  pending_.erase(it);
  RememberConsumed(rec.hash);

  const double rtt = now - rec.t_sent;
  min_rtt_ = min_rtt_ ? std::min(*min_rtt_, rtt) : rtt;

  const bool out_of_order = max_acked_index_ && rec.send_index < *max_acked_index_;
  reordering_.Record(rec.send_index);
  if (out_of_order) {
    ++diag_.out_of_order_acks;
    return std::nullopt;
  }
  max_acked_index_ = rec.send_index;

  bool has_rates = false;
  if (prev_) {
    EpochSample s;
    s.t_ack = now;
    s.t_sent = rec.t_sent;
    s.t_sent_prev = prev_->record.t_sent;
    s.rtt = rtt;
    s.sent_span = rec.t_sent - prev_->record.t_sent;
    s.rcvd_span = now - prev_->t_ack;
    const bool sane = s.sent_span > 0 && s.rcvd_span > 0 &&
                      rec.bytes_sent_cum >= prev_->record.bytes_sent_cum &&
                      ack.bytes_rcvd_cum >= prev_->bytes_rcvd_cum;
    if (sane) {
      s.sent_bytes = rec.bytes_sent_cum - prev_->record.bytes_sent_cum;
      s.rcvd_bytes = ack.bytes_rcvd_cum - prev_->bytes_rcvd_cum;
      window_.push_back(s);
      last_epoch_ = s;
      has_rates = true;
      prev_ = AckedBoundary{rec, now, ack.bytes_rcvd_cum};
    }
    // Otherwise keep the old boundary so the next epoch spans both.
  } else {
    prev_ = AckedBoundary{rec, now, ack.bytes_rcvd_cum};
  }

  while (window_.size() > 1 && window_.front().t_ack < now - *min_rtt_) {
    window_.pop_front();
  }

  CongestionSignals sig;
  if (has_rates || !window_.empty()) {
    sig = Aggregate(now, rtt);
  } else {
    sig.t = now;
    sig.rtt = rtt;
    sig.latest_rtt = rtt;
    sig.min_rtt = *min_rtt_;
  }
  last_signals_ = sig;
  ++diag_.signals_emitted;
  return sig;
}

CongestionSignals EpochMeasurement::Aggregate(TimeSec now, double latest_rtt) const {
  CongestionSignals sig;
  sig.t = now;
  sig.latest_rtt = latest_rtt;
  sig.min_rtt = *min_rtt_;
  double rtt_sum = 0, sent_span = 0, rcvd_span = 0;
  uint64_t sent = 0, rcvd = 0;
  for (const EpochSample& s : window_) {
    rtt_sum += s.rtt;
    sent += s.sent_bytes;
    sent_span += s.sent_span;
    rcvd += s.rcvd_bytes;
    rcvd_span += s.rcvd_span;
  }
  // Rounding in the mean must not put it below its own minimum.
  sig.rtt = std::max(rtt_sum / static_cast<double>(window_.size()), sig.min_rtt);
  sig.send_rate = 8.0 * static_cast<double>(sent) / sent_span;
  sig.recv_rate = 8.0 * static_cast<double>(rcvd) / rcvd_span;
  sig.epoch_span = window_.back().sent_span;
  sig.has_rates = true;
  return sig;
}

std::optional<uint64_t> EpochMeasurement::MaybeUpdateSamplingPeriod() {
  if (!min_rtt_ || !last_signals_ || !last_signals_->has_rates) return std::nullopt;
  const uint64_t period =
      ComputeSamplingPeriod(*min_rtt_, last_signals_->send_rate, mean_pkt_size_);
  if (period == sampling_period_) return std::nullopt;
  sampling_period_ = period;
  return period;
}

}  // namespace bundler::measurement
