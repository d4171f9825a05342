#ifndef BUNDLER_MEASUREMENT_EPOCH_MEASUREMENT_H_
#define BUNDLER_MEASUREMENT_EPOCH_MEASUREMENT_H_

#include <cstdint>
#include <deque>
#include <optional>
#include <unordered_set>

#include "bundler/measurement/header_hash.h"
#include "bundler/packet.h"

namespace bundler::measurement {

struct EpochBoundaryRecord {
  uint64_t hash = 0;
  TimeSec t_sent = 0;
  uint64_t bytes_sent_cum = 0;  // includes this packet
  uint64_t send_index = 0;      // position among this bundle's boundaries
};

struct CongestionAck {
  uint32_t bundle_id = 0;
  uint64_t hash = 0;
  uint64_t bytes_rcvd_cum = 0;

  friend bool operator==(const CongestionAck&, const CongestionAck&) = default;
};

// One measurement sample as handed to the rate controller. `rtt` and the
// rates are averaged over the epochs acknowledged within the last min_rtt;
// `latest_rtt` is the newest epoch's raw RTT.
struct CongestionSignals {
  TimeSec t = 0;
  double rtt = 0;
  double latest_rtt = 0;
  double min_rtt = 0;
  double send_rate = 0;  // bits/sec
  double recv_rate = 0;  // bits/sec
  double epoch_span = 0;
  // False for the very first acknowledged boundary of a bundle: there is no
  // earlier boundary to delimit an epoch, so only RTT is known.
  bool has_rates = false;
};

// Raw, unaveraged result of one acknowledged epoch.
struct EpochSample {
  TimeSec t_ack = 0;
  TimeSec t_sent = 0;
  TimeSec t_sent_prev = 0;
  double rtt = 0;
  uint64_t sent_bytes = 0;
  double sent_span = 0;
  uint64_t rcvd_bytes = 0;
  double rcvd_span = 0;

  double send_rate() const { return 8.0 * sent_bytes / sent_span; }
  double recv_rate() const { return 8.0 * rcvd_bytes / rcvd_span; }
};

// Share of congestion ACKs that arrive out of boundary-send order, over the
// last `window` matched ACKs. An ACK is out of order when some boundary sent
// after it has already been acknowledged.
class ReorderingTracker {
 public:
  explicit ReorderingTracker(size_t window = 100) : window_(window) {}

  void Record(uint64_t boundary_send_index);

  double Fraction() const;
  size_t in_order_count() const { return recent_.size() - out_of_order_; }
  size_t out_of_order_count() const { return out_of_order_; }

 private:
  size_t window_;
  std::deque<bool> recent_;  // true = out of order
  size_t out_of_order_ = 0;
  std::optional<uint64_t> max_acked_;
};

struct MeasurementConfig {
  uint64_t initial_sampling_period = 1;
  double eviction_rtts = 4.0;
  double eviction_before_min_rtt = 1.0;  // seconds, until an RTT is known
  double pkt_size_gain = 1.0 / 16.0;
  double initial_pkt_size = 1500.0;
  size_t reorder_window = 100;
  size_t duplicate_memory = 256;
};

struct MeasurementDiagnostics {
  uint64_t boundaries_recorded = 0;
  uint64_t signals_emitted = 0;
  uint64_t foreign_bundle_acks = 0;
  uint64_t unmatched_acks = 0;
  uint64_t duplicate_acks = 0;
  uint64_t out_of_order_acks = 0;
  uint64_t evicted_records = 0;
};

// Sendbox-side measurement state for one bundle. Driven from a single event
// loop; holds no locks.
class EpochMeasurement {
 public:
  explicit EpochMeasurement(uint32_t bundle_id, MeasurementConfig config = {});

  // Every packet leaving the sendbox, in send order. Updates the byte count
  // and packet-size average, and records the packet if it is a boundary
  // under the current sampling period. Returns true if recorded.
  bool OnPacketSent(const HeaderSubset& header, uint32_t size, TimeSec t);

  void OnBoundarySent(uint64_t hash, TimeSec t_sent, uint64_t bytes_sent_cum);

  std::optional<CongestionSignals> OnAck(const CongestionAck& ack, TimeSec now);

  // Recomputes the period from min_rtt and the windowed send rate. Returns
  // the new period only when it changed.
  std::optional<uint64_t> MaybeUpdateSamplingPeriod();

  void EvictStale(TimeSec now);

  uint32_t bundle_id() const { return bundle_id_; }
  uint64_t sampling_period() const { return sampling_period_; }
  uint64_t bytes_sent() const { return bytes_sent_; }
  double mean_pkt_size() const { return mean_pkt_size_; }
  std::optional<double> min_rtt() const { return min_rtt_; }
  size_t pending_count() const { return pending_.size(); }
  const std::optional<EpochSample>& last_epoch() const { return last_epoch_; }
  const std::optional<CongestionSignals>& last_signals() const { return last_signals_; }
  const ReorderingTracker& reordering() const { return reordering_; }
  const MeasurementDiagnostics& diagnostics() const { return diag_; }

 private:
  struct AckedBoundary {
    EpochBoundaryRecord record;
    TimeSec t_ack = 0;
    uint64_t bytes_rcvd_cum = 0;
  };

  void RememberConsumed(uint64_t hash);
  CongestionSignals Aggregate(TimeSec now, double latest_rtt) const;

  uint32_t bundle_id_;
  MeasurementConfig config_;
  uint64_t sampling_period_;
  uint64_t bytes_sent_ = 0;
  double mean_pkt_size_;
  uint64_t next_send_index_ = 0;
  std::optional<double> min_rtt_;

  std::deque<EpochBoundaryRecord> pending_;
  std::optional<AckedBoundary> prev_;
  std::optional<uint64_t> max_acked_index_;
  std::deque<EpochSample> window_;
  std::optional<EpochSample> last_epoch_;
  std::optional<CongestionSignals> last_signals_;

  std::deque<uint64_t> consumed_order_;
  std::unordered_multiset<uint64_t> consumed_;

  ReorderingTracker reordering_;
  MeasurementDiagnostics diag_;
};

}  // namespace bundler::measurement

#endif  // BUNDLER_MEASUREMENT_EPOCH_MEASUREMENT_H_
