#include "bundler/control/delay_controller.h"

#include <algorithm>

namespace bundler::control {

std::string_view ToString(DelayVariant v) {
  switch (v) {
    case DelayVariant::kCopa:
      return "copa";
    case DelayVariant::kBasicDelay:
      return "basic_delay";
  }
  return "?";
}

DelayController::DelayController(DelayConfig config, double initial_rate_bps)
    : config_(config), rate_(initial_rate_bps) {}

void DelayController::Reset(double rate_bps) {
  rate_ = rate_bps;
  slow_start_ = false;
  cwnd_pkts_ = 0;
  velocity_ = 1.0;
  direction_ = 0;
  last_step_dir_ = 0;
  same_direction_rtts_ = 0;
  rtt_start_ = -1;
  recent_rtts_.clear();
}

double DelayController::Update(const measurement::CongestionSignals& sig, double mu_est,
                               double dt, bool app_limited) {
  if (sig.min_rtt <= 0 || sig.rtt <= 0) return rate_;
  switch (config_.variant) {
    case DelayVariant::kCopa:
      rate_ = UpdateCopa(sig, dt, app_limited);
      break;
    case DelayVariant::kBasicDelay:
      rate_ = UpdateBasic(sig, app_limited);
      break;
  }
  if (mu_est > 0) {
    rate_ = std::clamp(rate_, config_.low_clamp * mu_est, config_.high_clamp * mu_est);
  }
  if (config_.variant == DelayVariant::kCopa && !recent_rtts_.empty()) {
    double standing = recent_rtts_.front().second;
    for (const auto& [t, r] : recent_rtts_) standing = std::min(standing, r);
    cwnd_pkts_ = rate_ * standing / (8.0 * config_.pkt_size);
  }
  return rate_;
}

double DelayController::UpdateCopa(const measurement::CongestionSignals& sig, double dt,
                                   bool app_limited) {
  const double srtt = sig.rtt;
  recent_rtts_.emplace_back(sig.t, sig.latest_rtt > 0 ? sig.latest_rtt : sig.rtt);
  while (recent_rtts_.size() > 1 && recent_rtts_.front().first < sig.t - srtt / 2) {
    recent_rtts_.pop_front();
  }
  double standing = recent_rtts_.front().second;
  for (const auto& [t, r] : recent_rtts_) standing = std::min(standing, r);

  const double dq = std::max(standing - sig.min_rtt, config_.min_queue_delay);
  const double target_pps = 1.0 / (config_.copa_delta * dq);
  if (cwnd_pkts_ <= 0) cwnd_pkts_ = rate_ * standing / (8.0 * config_.pkt_size);
  const double current_pps = cwnd_pkts_ / standing;
  const double acked = std::max(0.0, sig.recv_rate * dt / (8.0 * config_.pkt_size));

  if (slow_start_) {
    if (current_pps < target_pps) {
      if (!app_limited) cwnd_pkts_ += acked;
    } else {
      slow_start_ = false;
    }
  }
  if (!slow_start_) {
    const int step_dir = current_pps <= target_pps ? 1 : -1;
    if (step_dir != last_step_dir_) {
      // Any reversal means the target was crossed; restart gently.
      velocity_ = 1.0;
      same_direction_rtts_ = 0;
      rtt_start_ = -1;
      last_step_dir_ = step_dir;
    }
    const double step = velocity_ * acked / (config_.copa_delta * std::max(cwnd_pkts_, 1.0));
    if (step_dir > 0) {
      if (!app_limited) cwnd_pkts_ += step;
    } else {
      cwnd_pkts_ -= step;
    }
    cwnd_pkts_ = std::max(cwnd_pkts_, 2.0);

    // Velocity doubles once the window has moved the same way for three
    // consecutive RTTs.
    if (rtt_start_ < 0) {
      rtt_start_ = sig.t;
      cwnd_at_rtt_start_ = cwnd_pkts_;
    } else if (sig.t - rtt_start_ >= srtt) {
      const int dir = cwnd_pkts_ > cwnd_at_rtt_start_ ? 1 : -1;
      if (dir == direction_) {
        if (++same_direction_rtts_ >= 3) {
          velocity_ = std::min(2.0 * velocity_, config_.max_velocity);
        }
      } else {
        direction_ = dir;
        same_direction_rtts_ = 1;
        velocity_ = 1.0;
      }
      rtt_start_ = sig.t;
      cwnd_at_rtt_start_ = cwnd_pkts_;
    }
  }
  return cwnd_pkts_ * 8.0 * config_.pkt_size / standing;
}

double DelayController::UpdateBasic(const measurement::CongestionSignals& sig,
                                    bool app_limited) {
  const double dq = std::max(sig.rtt - sig.min_rtt, 0.0);
  const double target = 1.25 * sig.min_rtt * config_.basic_queue_frac;
  double factor = 1.0 + config_.basic_gain * (target - dq) / sig.rtt;
  if (app_limited) factor = std::min(factor, 1.0);
  factor = std::max(factor, 0.5);
  slow_start_ = false;
  return rate_ * factor;
}

}  // namespace bundler::control
