#include "bundler/control/pi_controller.h"

#include <algorithm>
#include <cassert>

namespace bundler::control {

double PiController::Update(double q_delay, double q_delay_prev, double dt,
                            double mu_bps) {
  assert(dt > 0);
  const double drive = config_.alpha * (q_delay - config_.q_target) +
                       config_.beta * (q_delay - q_delay_prev) / dt;
  rate_ = std::clamp(rate_ + mu_bps * drive * dt, 0.0, 2.0 * mu_bps);
  return rate_;
}

}  // namespace bundler::control
