#include "bundler/control/mode_fsm.h"

namespace bundler::control {

std::string_view ToString(ControllerMode m) {
  switch (m) {
    case ControllerMode::kDelayControl:
      return "DelayControl";
    case ControllerMode::kCompetitive:
      return "Competitive";
    case ControllerMode::kDisabled:
      return "Disabled";
  }
  return "?";
}

std::optional<ControllerMode> ParseMode(std::string_view s) {
  for (auto m : {ControllerMode::kDelayControl, ControllerMode::kCompetitive,
                 ControllerMode::kDisabled}) {
    if (ToString(m) == s) return m;
  }
  return std::nullopt;
}

ControllerMode NextMode(ControllerMode mode, bool elastic, double reorder_frac,
                        bool low_reorder_sustained, const FsmConfig& config) {
  if (reorder_frac > config.disable_above) return ControllerMode::kDisabled;
  if (mode == ControllerMode::kDisabled && !low_reorder_sustained) {
    return ControllerMode::kDisabled;
  }
  return elastic ? ControllerMode::kCompetitive : ControllerMode::kDelayControl;
}

ControllerMode ModeFsm::Update(bool elastic, double reorder_frac, TimeSec now) {
  if (reorder_frac < config_.reenable_below) {
    if (!low_since_) low_since_ = now;
  } else {
    low_since_.reset();
  }
  const bool sustained = low_since_ && now - *low_since_ >= config_.reenable_hold;
  mode_ = NextMode(mode_, elastic, reorder_frac, sustained, config_);
  return mode_;
}

}  // namespace bundler::control
