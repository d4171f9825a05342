#ifndef BUNDLER_CONTROL_DELAY_CONTROLLER_H_
#define BUNDLER_CONTROL_DELAY_CONTROLLER_H_

#include <deque>
#include <string_view>
#include <utility>

#include "bundler/measurement/epoch_measurement.h"

namespace bundler::control {

enum class DelayVariant { kCopa, kBasicDelay };

std::string_view ToString(DelayVariant v);

struct DelayConfig {
  DelayVariant variant = DelayVariant::kCopa;
  double copa_delta = 0.5;
  double max_velocity = 32.0;
  double basic_gain = 0.5;
  double basic_queue_frac = 0.1;  // in-network queue target, fraction of min_rtt
  double min_queue_delay = 1e-4;  // floor on the queueing-delay estimate
  double low_clamp = 0.05;        // rate >= low_clamp * mu
  double high_clamp = 2.0;        // rate <= high_clamp * mu
  double pkt_size = 1500.0;
};

// Bundle-level delay-based rate control. Copa is run on a cwnd-equivalent
// (rate times standing RTT), with the per-ACK increments of the original
// scaled by the number of packets delivered since the previous update.
class DelayController {
 public:
  explicit DelayController(DelayConfig config = {}, double initial_rate_bps = 12e6);

  // `dt` is the time since the previous update. When `app_limited` the
  // bundle is not using its current rate, so the controller holds instead of
  // growing.
  double Update(const measurement::CongestionSignals& sig, double mu_est, double dt,
                bool app_limited = false);

  // Restart from `rate_bps` in steady state (no slow start).
  void Reset(double rate_bps);

  double rate() const { return rate_; }
  bool in_slow_start() const { return slow_start_; }
  double velocity() const { return velocity_; }
  const DelayConfig& config() const { return config_; }

 private:
  double UpdateCopa(const measurement::CongestionSignals& sig, double dt, bool app_limited);
  double UpdateBasic(const measurement::CongestionSignals& sig, bool app_limited);

  DelayConfig config_;
  double rate_;
  bool slow_start_ = true;

  // Copa state.
  double cwnd_pkts_ = 0;
  double velocity_ = 1.0;
  int direction_ = 0;
  int last_step_dir_ = 0;
  int same_direction_rtts_ = 0;
  double cwnd_at_rtt_start_ = 0;
  TimeSec rtt_start_ = -1;
  std::deque<std::pair<TimeSec, double>> recent_rtts_;
};

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_DELAY_CONTROLLER_H_
