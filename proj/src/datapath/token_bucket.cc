#include "bundler/datapath/token_bucket.h"

#include <algorithm>
#include <cassert>
#include <limits>

namespace bundler::datapath {

TokenBucket::TokenBucket(double rate_bps, double depth_bytes, TimeSec now)
    : rate_(rate_bps), depth_(depth_bytes), tokens_(depth_bytes), last_refill_(now) {
  assert(rate_bps >= 0 && depth_bytes > 0);
}

void TokenBucket::Refill(TimeSec now) {
  if (now <= last_refill_) return;
  tokens_ = std::min(depth_, tokens_ + rate_ * (now - last_refill_) / 8.0);
  last_refill_ = now;
}

void TokenBucket::SetRate(double rate_bps, TimeSec now) {
  Refill(now);
  rate_ = std::max(rate_bps, 0.0);
}

bool TokenBucket::TryConsume(uint32_t bytes, TimeSec now) {
  Refill(now);
  // Tolerate rounding in the refill arithmetic so a packet scheduled for
  // exactly the eligibility instant is not pushed back by one ulp.
  constexpr double kSlack = 1e-6;
  if (tokens_ + kSlack < bytes) return false;
  tokens_ = std::max(0.0, tokens_ - bytes);
  return true;
}

double TokenBucket::TimeUntil(uint32_t bytes, TimeSec now) const {
  const double elapsed = std::max(0.0, now - last_refill_);
  const double have = std::min(depth_, tokens_ + rate_ * elapsed / 8.0);
  if (have >= bytes) return 0.0;
  if (rate_ <= 0) return std::numeric_limits<double>::infinity();
  return (bytes - have) * 8.0 / rate_;
}

}  // namespace bundler::datapath
