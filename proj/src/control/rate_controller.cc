#include "bundler/control/rate_controller.h"

#include <algorithm>
#include <cmath>

namespace bundler::control {

void WindowedMax::Update(TimeSec t, double v) {
  while (!samples_.empty() && samples_.back().second <= v) samples_.pop_back();
  samples_.emplace_back(t, v);
  while (samples_.front().first < t - window_) samples_.pop_front();
  held_ = samples_.front().second;
}

std::optional<double> WindowedMax::Get(TimeSec now) {
  while (!samples_.empty() && samples_.front().first < now - window_) samples_.pop_front();
  if (!samples_.empty()) held_ = samples_.front().second;
  return held_;
}

RateController::RateController(RateControlConfig config, TimeSec start)
    : config_(config),
      delay_(config.delay, config.initial_rate),
      pi_(config.pi),
      detector_(config.elasticity),
      fsm_(config.fsm),
      mu_filter_(config.mu_window),
      mu_(config.initial_rate),
      base_(config.initial_rate),
      rate_(config.initial_rate) {
  pulse_.period = config.pulse_period;
  pulse_.origin = start;
  pulse_.amplitude = config.pulse_amplitude_frac * mu_;
  if (config.pinned_mode) mode_ = *config.pinned_mode;
}

void RateController::OnSignals(const measurement::CongestionSignals& sig) {
  fresh_.push_back(sig);
}

double RateController::Tick(TimeSec now, const TickInputs& in) {
  const double dt = last_tick_ && now > *last_tick_ ? now - *last_tick_ : config_.tick;
  last_tick_ = now;

  // Capacity samples age only while the bottleneck has no standing queue:
  // behind someone else's queue the bundle's receive rate is just its share.
  if (!latest_ || latest_->latest_rtt - latest_->min_rtt < config_.saturation_queue) {
    capacity_clock_ += dt;
  }
  bool have_new = false;
  for (const auto& sig : fresh_) {
    if (!sig.has_rates) continue;
    mu_filter_.Update(capacity_clock_, sig.recv_rate);
    latest_ = sig;
    have_new = true;
  }
  fresh_.clear();
  if (auto mu = mu_filter_.Get(capacity_clock_); mu && *mu > 0) mu_ = *mu;
  pulse_.amplitude = config_.pulse_amplitude_frac * mu_;

  // The detector needs evenly spaced samples, so a tick without a fresh
  // measurement repeats the previous estimate. Without a bottleneck queue the
  // receive rate just follows the send rate and the estimate degenerates to
  // spare capacity, a mirror image of our own pulses; those epochs are
  // skipped too.
  if (have_new && latest_->latest_rtt - latest_->min_rtt >= config_.saturation_queue) {
    if (auto z = CrossRate(mu_, latest_->send_rate, latest_->recv_rate)) last_z_ = *z;
  }
  if (last_z_) detector_.Push(*last_z_);
  elastic_ = config_.detect_elasticity && detector_.IsElastic(pulse_);

  const double reorder = config_.detect_multipath ? in.reorder_fraction : 0.0;
  const ControllerMode before = mode_;
  mode_ = config_.pinned_mode ? *config_.pinned_mode : fsm_.Update(elastic_, reorder, now);
  if (mode_ != before) OnModeChange(before, mode_);

  switch (mode_) {
    case ControllerMode::kDelayControl:
      if (have_new) {
        const double since = last_delay_update_ ? latest_->t - *last_delay_update_ : config_.tick;
        const bool app_limited =
            !in.backlogged && latest_->send_rate < config_.app_limited_frac * rate_;
        base_ = delay_.Update(*latest_, mu_, std::max(since, 0.0), app_limited);
        last_delay_update_ = latest_->t;
      }
      break;
    case ControllerMode::kCompetitive:
      base_ = pi_.Update(in.queue_delay, q_prev_, dt, mu_);
      break;
    case ControllerMode::kDisabled:
      base_ = config_.disabled_rate_factor * mu_;
      break;
  }
  q_prev_ = in.queue_delay;

  double rate = base_;
  if (config_.pulsing && mode_ != ControllerMode::kDisabled) {
    // Apply the pulse's exact average over the coming tick, which keeps the
    // piecewise-constant pacing rate neutral over each period.
    rate += MeanPulseOffset(pulse_, now, now + config_.tick);
  }
  const double ceiling = config_.disabled_rate_factor * mu_;
  rate_ = std::isfinite(rate) ? std::clamp(rate, config_.min_rate, ceiling) : ceiling;
  return rate_;
}

void RateController::OnModeChange(ControllerMode from, ControllerMode to) {
  switch (to) {
    case ControllerMode::kCompetitive:
      pi_.Reset(base_);
      break;
    case ControllerMode::kDelayControl:
      delay_.Reset(from == ControllerMode::kDisabled ? mu_ : std::min(base_, 2.0 * mu_));
      base_ = delay_.rate();
      last_delay_update_.reset();
      break;
    case ControllerMode::kDisabled:
      break;
  }
}

}  // namespace bundler::control
