#ifndef BUNDLER_SIM_TCP_H_
#define BUNDLER_SIM_TCP_H_

#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <set>
#include <string_view>

#include "bundler/packet.h"
#include "bundler/sim/event_queue.h"

namespace bundler::sim {

enum class TcpAlgorithm { kCubic, kReno, kFixedWindow };

std::string_view ToString(TcpAlgorithm a);
std::optional<TcpAlgorithm> ParseTcpAlgorithm(std::string_view s);

struct TcpConfig {
  TcpAlgorithm algorithm = TcpAlgorithm::kCubic;
  double initial_window = 10;   // packets
  double fixed_window = 450;    // packets, FixedWindow only
  double min_rto = 0.2;
  double initial_rto = 1.0;
  bool hystart = true;           // Cubic only
  double max_rto = 60.0;
};

constexpr double kInfiniteSsthresh = std::numeric_limits<double>::infinity();
// Slow start grows by at most this many packets per ACK (appropriate byte
// counting), which bounds bursts after a cumulative ACK jumps a hole.
constexpr double kAbcLimit = 2.0;

// Window-based congestion control, in packets. cwnd never drops below 1.
class TcpCc {
 public:
  virtual ~TcpCc() = default;
  // `acked` newly acknowledged packets outside recovery; `srtt` smoothed RTT.
  virtual void OnAck(double acked, double srtt, TimeSec now) = 0;
  // Fast-retransmit loss signal, once per window.
  virtual void OnLoss(TimeSec now) = 0;
  virtual void OnRto(TimeSec now) = 0;
  // Every valid (non-retransmitted) RTT sample.
  virtual void OnRttSample(double /*rtt*/, TimeSec /*now*/) {}

  double cwnd() const { return cwnd_; }
  double ssthresh() const { return ssthresh_; }
  bool in_slow_start() const { return cwnd_ < ssthresh_; }

 protected:
  double cwnd_ = 10;
  double ssthresh_ = kInfiniteSsthresh;
};

class Reno : public TcpCc {
 public:
  explicit Reno(double initial_window);
  void OnAck(double acked, double srtt, TimeSec now) override;
  void OnLoss(TimeSec now) override;
  void OnRto(TimeSec now) override;
};

// Cubic growth W(t) = C (t - K)^3 + W_max, with the TCP-friendly region.
// `t` is measured from the first avoidance ACK after a reduction. Slow
// start ends early on a delay increase (HyStart's delay test).
class Cubic : public TcpCc {
 public:
  static constexpr double kC = 0.4;
  static constexpr double kBeta = 0.7;

  explicit Cubic(double initial_window, bool hystart = true);
  void OnAck(double acked, double srtt, TimeSec now) override;
  void OnLoss(TimeSec now) override;
  void OnRto(TimeSec now) override;
  void OnRttSample(double rtt, TimeSec now) override;

  double w_max() const { return w_max_; }
  double k() const { return k_; }
  // Target window at `t` seconds into the current epoch.
  double Target(double t) const;

 private:
  void Reduce();

  double w_max_ = 0;
  double k_ = 0;
  std::optional<TimeSec> epoch_start_;
  double w_est_ = 0;

  bool hystart_;
  double delay_min_ = kInfiniteSsthresh;
  double round_min_ = kInfiniteSsthresh;
  TimeSec round_start_ = -1;
  int round_samples_ = 0;
};

// Holds a constant window regardless of feedback.
class FixedWindow : public TcpCc {
 public:
  explicit FixedWindow(double window);
  void OnAck(double, double, TimeSec) override {}
  void OnLoss(TimeSec) override {}
  void OnRto(TimeSec) override {}
};

std::unique_ptr<TcpCc> MakeCc(const TcpConfig& config);

enum class TcpState { kSlowStart, kAvoidance, kRecovery };

// Segment-granular sender: sequence numbers count segments. Loss recovery
// follows the SACK scoreboard: every ACK names the segment
// that triggered it, a segment counts as lost once three segments above it
// have been selectively acknowledged, lost segments are resent before new
// data, and the window limits segments believed to be in the network.
// Recovery (one window reduction) lasts until the segment that was highest
// at its start is cumulatively acknowledged. A timeout marks everything
// unacknowledged as lost and restarts from a window of one.
class TcpSender {
 public:
  // Emits segment `seq`; `retransmit` is informational.
  using TransmitFn = std::function<void(int64_t seq, bool retransmit)>;
  static constexpr int64_t kUnbounded = std::numeric_limits<int64_t>::max();
  static constexpr int kDupThresh = 3;

  TcpSender(EventQueue& events, TcpConfig config, int64_t total_segments, TransmitFn transmit);

  void Start();
  // `cum_ack` is the next segment the receiver expects; `sacked` is the
  // segment whose arrival produced this ACK (ignored unless >= cum_ack).
  void OnAck(int64_t cum_ack, int64_t sacked = -1);
  // Backlogged flows: stop offering new data after what is already sent.
  void StopNewData();

  TcpState state() const;
  const TcpCc& cc() const { return *cc_; }
  int64_t snd_una() const { return snd_una_; }
  int64_t snd_nxt() const { return snd_nxt_; }
  int64_t total_segments() const { return total_; }
  // Segments believed to be in the network.
  int64_t pipe() const { return in_flight_; }
  size_t lost_pending() const { return lost_.size(); }
  double srtt() const { return srtt_; }
  double rto() const { return rto_; }
  bool finished() const { return snd_una_ >= total_; }
  uint64_t retransmissions() const { return retransmissions_; }
  uint64_t timeouts() const { return timeouts_; }

 private:
  enum class SegState : uint8_t { kInFlight, kSacked, kLost };
  struct SegInfo {
    TimeSec sent = 0;
    bool retransmitted = false;  // Karn: no RTT samples once resent
    SegState state = SegState::kInFlight;
  };

  SegInfo& Seg(int64_t seq) { return segs_[static_cast<size_t>(seq - snd_una_)]; }
  void TrySend();
  void Transmit(int64_t seq, bool retransmit);
  void OnSack(int64_t seq, TimeSec now);
  // Marks segments below the third-highest SACKed one lost; true if any.
  bool DetectLosses();
  void ArmTimer();
  void OnTimer();
  void SampleRtt(double rtt, TimeSec now);

  EventQueue& events_;
  TcpConfig config_;
  std::unique_ptr<TcpCc> cc_;
  int64_t total_;
  TransmitFn transmit_;

  int64_t snd_una_ = 0;
  int64_t snd_nxt_ = 0;
  std::deque<SegInfo> segs_;  // from snd_una to snd_nxt
  int64_t in_flight_ = 0;
  std::set<int64_t> sacked_;
  std::set<int64_t> lost_;   // lost and not yet resent
  int64_t loss_marker_ = 0;  // segments below were already judged
  bool in_recovery_ = false;
  int64_t recover_ = -1;

  double srtt_ = 0;
  double rttvar_ = 0;
  double rto_;
  bool have_rtt_ = false;
  TimeSec rto_deadline_ = 0;
  std::optional<TimeSec> timer_at_;
  uint64_t retransmissions_ = 0;
  uint64_t timeouts_ = 0;
};

// Receiver: cumulative ACK for every arriving segment.
class TcpReceiver {
 public:
  explicit TcpReceiver(int64_t total_segments) : total_(total_segments) {}

  // Returns the cumulative ACK (next expected segment).
  int64_t OnSegment(int64_t seq);
  bool complete() const { return expected_ >= total_; }
  int64_t expected() const { return expected_; }

 private:
  int64_t total_;
  int64_t expected_ = 0;
  std::set<int64_t> out_of_order_;
};

}  // namespace bundler::sim

#endif  // BUNDLER_SIM_TCP_H_
