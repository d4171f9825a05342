#include "bundler/sim/tcp.h"

#include <algorithm>
#include <cmath>

namespace bundler::sim {

std::string_view ToString(TcpAlgorithm a) {
  switch (a) {
    case TcpAlgorithm::kCubic:
      return "cubic";
    case TcpAlgorithm::kReno:
      return "reno";
    case TcpAlgorithm::kFixedWindow:
      return "fixed";
  }
  return "?";
}

std::optional<TcpAlgorithm> ParseTcpAlgorithm(std::string_view s) {
  for (auto a : {TcpAlgorithm::kCubic, TcpAlgorithm::kReno, TcpAlgorithm::kFixedWindow}) {
    if (ToString(a) == s) return a;
  }
  return std::nullopt;
}

Reno::Reno(double initial_window) { cwnd_ = initial_window; }

void Reno::OnAck(double acked, double, TimeSec) {
  if (cwnd_ < ssthresh_) {
    cwnd_ += std::min(acked, kAbcLimit);
  } else {
    cwnd_ += acked / cwnd_;
  }
}

void Reno::OnLoss(TimeSec) {
  ssthresh_ = std::max(cwnd_ / 2, 2.0);
  cwnd_ = ssthresh_;
}

void Reno::OnRto(TimeSec) {
  ssthresh_ = std::max(cwnd_ / 2, 2.0);
  cwnd_ = 1;
}

Cubic::Cubic(double initial_window, bool hystart) : hystart_(hystart) {
  cwnd_ = initial_window;
}

void Cubic::OnRttSample(double rtt, TimeSec now) {
  delay_min_ = std::min(delay_min_, rtt);
  if (!hystart_ || cwnd_ >= ssthresh_ || cwnd_ < 16) return;
  if (round_start_ < 0 || now - round_start_ > delay_min_) {
    round_start_ = now;
    round_min_ = kInfiniteSsthresh;
    round_samples_ = 0;
  }
  if (round_samples_ >= 8) return;
  round_min_ = std::min(round_min_, rtt);
  if (++round_samples_ == 8) {
    const double eta = std::clamp(delay_min_ / 8, 0.004, 0.016);
    if (round_min_ >= delay_min_ + eta) ssthresh_ = cwnd_;
  }
}

double Cubic::Target(double t) const { return kC * std::pow(t - k_, 3) + w_max_; }

void Cubic::OnAck(double acked, double srtt, TimeSec now) {
  if (cwnd_ < ssthresh_) {
    cwnd_ += std::min(acked, kAbcLimit);
    return;
  }
  if (!epoch_start_) {
    epoch_start_ = now;
    if (w_max_ < cwnd_) {
      // Reached avoidance without a loss: grow from the current window.
      w_max_ = cwnd_;
      k_ = 0;
    } else {
      k_ = std::cbrt(w_max_ * (1 - kBeta) / kC);
    }
    w_est_ = cwnd_;
  }
  const double t = now - *epoch_start_;
  const double target = Target(t);
  if (target > cwnd_) {
    cwnd_ += acked * (target - cwnd_) / cwnd_;
  } else {
    cwnd_ += acked * 0.01 / cwnd_;
  }
  // TCP-friendly region: never grow slower than an AIMD flow with the same
  // average throughput.
  if (srtt > 0) {
    w_est_ += acked * 3 * (1 - kBeta) / (1 + kBeta) / cwnd_;
    cwnd_ = std::max(cwnd_, w_est_);
  }
}

void Cubic::Reduce() {
  w_max_ = cwnd_;
  ssthresh_ = std::max(cwnd_ * kBeta, 2.0);
  k_ = std::cbrt(w_max_ * (1 - kBeta) / kC);
  epoch_start_.reset();
}

void Cubic::OnLoss(TimeSec) {
  Reduce();
  cwnd_ = ssthresh_;
}

void Cubic::OnRto(TimeSec) {
  Reduce();
  cwnd_ = 1;
}

FixedWindow::FixedWindow(double window) { cwnd_ = std::max(window, 1.0); }

std::unique_ptr<TcpCc> MakeCc(const TcpConfig& config) {
  switch (config.algorithm) {
    case TcpAlgorithm::kCubic:
      return std::make_unique<Cubic>(config.initial_window, config.hystart);
    case TcpAlgorithm::kReno:
      return std::make_unique<Reno>(config.initial_window);
    case TcpAlgorithm::kFixedWindow:
      return std::make_unique<FixedWindow>(config.fixed_window);
  }
  return nullptr;
}

TcpSender::TcpSender(EventQueue& events, TcpConfig config, int64_t total_segments,
                     TransmitFn transmit)
    : events_(events),
      config_(config),
      cc_(MakeCc(config)),
      total_(total_segments),
      transmit_(std::move(transmit)),
      rto_(config.initial_rto) {}

TcpState TcpSender::state() const {
  if (in_recovery_) return TcpState::kRecovery;
  return cc_->in_slow_start() ? TcpState::kSlowStart : TcpState::kAvoidance;
}

void TcpSender::Start() { TrySend(); }

void TcpSender::StopNewData() { total_ = std::max(snd_nxt_, snd_una_); }

void TcpSender::Transmit(int64_t seq, bool retransmit) {
  if (seq == snd_nxt_) {
    segs_.emplace_back();
    ++snd_nxt_;
  }
  SegInfo& info = Seg(seq);
  info.sent = events_.now();
  info.state = SegState::kInFlight;
  ++in_flight_;
  if (retransmit) {
    info.retransmitted = true;
    ++retransmissions_;
  }
  transmit_(seq, retransmit);
}

void TcpSender::TrySend() {
  const double window = std::floor(cc_->cwnd());
  while (static_cast<double>(in_flight_) < window) {
    if (!lost_.empty()) {
      const int64_t seq = *lost_.begin();
      lost_.erase(lost_.begin());
      Transmit(seq, true);
    } else if (snd_nxt_ < total_) {
      Transmit(snd_nxt_, false);
    } else {
      break;
    }
  }
  if (snd_nxt_ > snd_una_) ArmTimer();
}

void TcpSender::SampleRtt(double rtt, TimeSec now) {
  if (!have_rtt_) {
    srtt_ = rtt;
    rttvar_ = rtt / 2;
    have_rtt_ = true;
  } else {
    rttvar_ = 0.75 * rttvar_ + 0.25 * std::abs(srtt_ - rtt);
    srtt_ = 0.875 * srtt_ + 0.125 * rtt;
  }
  rto_ = std::clamp(srtt_ + 4 * rttvar_, config_.min_rto, config_.max_rto);
  cc_->OnRttSample(rtt, now);
}

void TcpSender::OnSack(int64_t seq, TimeSec now) {
  SegInfo& info = Seg(seq);
  switch (info.state) {
    case SegState::kSacked:
      return;
    case SegState::kInFlight:
      --in_flight_;
      if (!info.retransmitted) SampleRtt(now - info.sent, now);
      break;
    case SegState::kLost:
      lost_.erase(seq);
      break;
  }
  info.state = SegState::kSacked;
  sacked_.insert(seq);
}

bool TcpSender::DetectLosses() {
  if (sacked_.size() < static_cast<size_t>(kDupThresh)) return false;
  const int64_t limit = *std::prev(sacked_.end(), kDupThresh);
  bool any = false;
  for (int64_t seq = std::max(loss_marker_, snd_una_); seq < limit; ++seq) {
    SegInfo& info = Seg(seq);
    if (info.state != SegState::kInFlight) continue;
    info.state = SegState::kLost;
    --in_flight_;
    lost_.insert(seq);
    if (seq > recover_) any = true;
  }
  loss_marker_ = std::max(loss_marker_, limit);
  return any;
}

void TcpSender::OnAck(int64_t cum_ack, int64_t sacked) {
  const TimeSec now = events_.now();
  cum_ack = std::min(cum_ack, snd_nxt_);
  int64_t newly = 0;
  if (cum_ack > snd_una_) {
    newly = cum_ack - snd_una_;
    const SegInfo& last = Seg(cum_ack - 1);
    if (last.state == SegState::kInFlight && !last.retransmitted) SampleRtt(now - last.sent, now);
    for (int64_t seq = snd_una_; seq < cum_ack; ++seq) {
      switch (segs_.front().state) {
        case SegState::kInFlight:
          --in_flight_;
          break;
        case SegState::kSacked:
          sacked_.erase(seq);
          break;
        case SegState::kLost:
          lost_.erase(seq);
          break;
      }
      segs_.pop_front();
    }
    snd_una_ = cum_ack;
    rto_deadline_ = now + rto_;
    if (in_recovery_ && snd_una_ > recover_) in_recovery_ = false;
  }
  if (sacked >= snd_una_ && sacked < snd_nxt_) OnSack(sacked, now);
  if (DetectLosses() && !in_recovery_) {
    in_recovery_ = true;
    recover_ = snd_nxt_ - 1;
    cc_->OnLoss(now);
  }
  if (newly > 0 && !in_recovery_) {
    cc_->OnAck(std::min(static_cast<double>(newly), kAbcLimit), srtt_, now);
  }
  TrySend();
}

void TcpSender::ArmTimer() {
  if (rto_deadline_ <= events_.now()) rto_deadline_ = events_.now() + rto_;
  // A pending event later than the deadline (the RTO shrank) is superseded.
  if (timer_at_ && *timer_at_ <= rto_deadline_) return;
  timer_at_ = rto_deadline_;
  const TimeSec at = rto_deadline_;
  events_.Schedule(at, [this, at] {
    if (timer_at_ == at) OnTimer();
  });
}

void TcpSender::OnTimer() {
  timer_at_.reset();
  if (snd_una_ >= snd_nxt_) return;
  const TimeSec now = events_.now();
  if (now < rto_deadline_) {
    ArmTimer();
    return;
  }
  ++timeouts_;
  cc_->OnRto(now);
  rto_ = std::min(rto_ * 2, config_.max_rto);
  rto_deadline_ = now + rto_;
  for (int64_t seq = snd_una_; seq < snd_nxt_; ++seq) {
    SegInfo& info = Seg(seq);
    if (info.state != SegState::kInFlight) continue;
    info.state = SegState::kLost;
    lost_.insert(seq);
  }
  in_flight_ = 0;
  loss_marker_ = snd_nxt_;
  recover_ = snd_nxt_ - 1;
  in_recovery_ = false;
  TrySend();
}

int64_t TcpReceiver::OnSegment(int64_t seq) {
  if (seq == expected_) {
    ++expected_;
    while (!out_of_order_.empty() && *out_of_order_.begin() <= expected_) {
      if (*out_of_order_.begin() == expected_) ++expected_;
      out_of_order_.erase(out_of_order_.begin());
    }
  } else if (seq > expected_) {
    out_of_order_.insert(seq);
  }
  return expected_;
}

}  // namespace bundler::sim
