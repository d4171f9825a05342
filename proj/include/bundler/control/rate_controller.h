#ifndef BUNDLER_CONTROL_RATE_CONTROLLER_H_
#define BUNDLER_CONTROL_RATE_CONTROLLER_H_

#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "bundler/control/delay_controller.h"
#include "bundler/control/elasticity.h"
#include "bundler/control/mode_fsm.h"
#include "bundler/control/pi_controller.h"
#include "bundler/control/pulse.h"
#include "bundler/measurement/epoch_measurement.h"

namespace bundler::control {

// Running maximum over a sliding time window. When every sample has aged
// out, the last maximum is held rather than dropping to zero.
class WindowedMax {
 public:
  explicit WindowedMax(double window_sec) : window_(window_sec) {}

  void Update(TimeSec t, double v);
  std::optional<double> Get(TimeSec now);

 private:
  double window_;
  std::deque<std::pair<TimeSec, double>> samples_;
  std::optional<double> held_;
};

struct RateControlConfig {
  DelayConfig delay;
  PiConfig pi;
  ElasticityConfig elasticity;
  FsmConfig fsm;
  double pulse_period = 0.2;
  double pulse_amplitude_frac = 0.25;  // of mu_est
  bool pulsing = true;
  bool detect_elasticity = true;
  bool detect_multipath = true;
  double mu_window = 10.0;
  double initial_rate = 12e6;
  double tick = 0.01;
  double disabled_rate_factor = 10.0;
  double min_rate = 1e5;
  // Fraction of the current rate below which an unbacklogged bundle counts
  // as application-limited.
  double app_limited_frac = 0.8;
  // Bottleneck queueing delay below which an epoch says nothing about cross
  // traffic.
  double saturation_queue = 0.001;
  // Forces a mode for the whole run; used by experiments that isolate one
  // controller.
  std::optional<ControllerMode> pinned_mode;
};

struct TickInputs {
  double queue_delay = 0;  // sendbox sojourn time, seconds
  bool backlogged = false;
  double reorder_fraction = 0;
};

// The sendbox's per-bundle congestion controller, run every tick. Picks a
// base rate by mode (delay control, PI queue holdback, or pass-through) and
// overlays the probing pulses.
class RateController {
 public:
  explicit RateController(RateControlConfig config = {}, TimeSec start = 0);

  void OnSignals(const measurement::CongestionSignals& sig);
  double Tick(TimeSec now, const TickInputs& in);

  ControllerMode mode() const { return mode_; }
  double rate() const { return rate_; }
  double base_rate() const { return base_; }
  double mu_est() const { return mu_; }
  const PulseState& pulse() const { return pulse_; }
  const ElasticityDetector& detector() const { return detector_; }
  ElasticityScore score() const { return detector_.Score(pulse_); }
  bool elastic() const { return elastic_; }
  const RateControlConfig& config() const { return config_; }

 private:
  void OnModeChange(ControllerMode from, ControllerMode to);

  RateControlConfig config_;
  DelayController delay_;
  PiController pi_;
  ElasticityDetector detector_;
  ModeFsm fsm_;
  WindowedMax mu_filter_;
  PulseState pulse_;

  ControllerMode mode_ = ControllerMode::kDelayControl;
  double mu_;
  double base_;
  double rate_;
  bool elastic_ = false;
  std::optional<TimeSec> last_tick_;
  double capacity_clock_ = 0;
  double q_prev_ = 0;

  std::vector<measurement::CongestionSignals> fresh_;
  std::optional<measurement::CongestionSignals> latest_;
  std::optional<TimeSec> last_delay_update_;
  std::optional<double> last_z_;
};

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_RATE_CONTROLLER_H_
