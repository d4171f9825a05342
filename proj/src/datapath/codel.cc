#include "bundler/datapath/codel.h"

#include <cmath>

namespace bundler::datapath {

bool CoDelState::OkToDrop(TimeSec now, double sojourn, uint64_t bytes_behind,
                          const CoDelParams& p) {
  if (sojourn < p.target || bytes_behind <= p.max_packet) {
    first_above_ = 0;
    return false;
  }
  if (first_above_ == 0) {
    first_above_ = now + p.interval;
    return false;
  }
  return now >= first_above_;
}

bool CoDelState::ShouldDrop(TimeSec now, double sojourn, uint64_t bytes_behind,
                            const CoDelParams& p) {
  const bool ok = OkToDrop(now, sojourn, bytes_behind, p);
  if (dropping_) {
    if (!ok) {
      dropping_ = false;
      return false;
    }
    if (now < drop_next_) return false;
    ++count_;
    drop_next_ += p.interval / std::sqrt(static_cast<double>(count_));
    return true;
  }
  if (!ok) return false;
  dropping_ = true;
  // Resume near the previous drop rate if the last dropping episode ended
  // recently.
  const uint32_t delta = count_ - last_count_;
  count_ = delta > 1 && now - drop_next_ < 16 * p.interval ? delta : 1;
  drop_next_ = now + p.interval / std::sqrt(static_cast<double>(count_));
  last_count_ = count_;
  return true;
}

void CoDelState::OnEmpty() {
  first_above_ = 0;
  dropping_ = false;
}

}  // namespace bundler::datapath
