#ifndef BUNDLER_CONTROL_PI_CONTROLLER_H_
#define BUNDLER_CONTROL_PI_CONTROLLER_H_

namespace bundler::control {

struct PiConfig {
  double alpha = 10.0;     // 1/s^2
  double beta = 10.0;      // 1/s
  double q_target = 0.010; // seconds of sendbox queueing held for probing
};

// Holds the sendbox queue near q_target while endhost loops compete:
//   rate += mu * (alpha*(q - q_target) + beta*dq/dt) * dt, clamped to [0, 2 mu].
// The mu factor turns the dimensionless queue-delay terms into a rate.
class PiController {
 public:
  explicit PiController(PiConfig config = {}) : config_(config) {}

  double Update(double q_delay, double q_delay_prev, double dt, double mu_bps);
  void Reset(double rate_bps) { rate_ = rate_bps; }

  double rate() const { return rate_; }
  const PiConfig& config() const { return config_; }

 private:
  PiConfig config_;
  double rate_ = 0;
};

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_PI_CONTROLLER_H_
