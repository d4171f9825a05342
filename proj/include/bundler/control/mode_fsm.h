#ifndef BUNDLER_CONTROL_MODE_FSM_H_
#define BUNDLER_CONTROL_MODE_FSM_H_

#include <optional>
#include <string_view>

#include "bundler/packet.h"

namespace bundler::control {

enum class ControllerMode { kDelayControl, kCompetitive, kDisabled };

std::string_view ToString(ControllerMode m);
std::optional<ControllerMode> ParseMode(std::string_view s);

struct FsmConfig {
  double disable_above = 0.05;   // reordering fraction that disables control
  double reenable_below = 0.01;
  double reenable_hold = 5.0;    // seconds the low fraction must persist
};

// Pure transition rule. Reordering above the disable threshold dominates.
// Leaving Disabled additionally needs `low_reorder_sustained`.
ControllerMode NextMode(ControllerMode mode, bool elastic, double reorder_frac,
                        bool low_reorder_sustained, const FsmConfig& config = {});

// Tracks how long reordering has stayed low so Disabled can be left.
class ModeFsm {
 public:
  explicit ModeFsm(FsmConfig config = {}) : config_(config) {}

  ControllerMode Update(bool elastic, double reorder_frac, TimeSec now);
  ControllerMode mode() const { return mode_; }

 private:
  FsmConfig config_;
  ControllerMode mode_ = ControllerMode::kDelayControl;
  std::optional<TimeSec> low_since_;
};

}  // namespace bundler::control

#endif  // BUNDLER_CONTROL_MODE_FSM_H_
