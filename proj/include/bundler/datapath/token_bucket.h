#ifndef BUNDLER_DATAPATH_TOKEN_BUCKET_H_
#define BUNDLER_DATAPATH_TOKEN_BUCKET_H_

#include <cstdint>

#include "bundler/packet.h"

namespace bundler::datapath {

// Byte-granular token bucket. Tokens accrue continuously at `rate` and are
// capped at `depth`. Changing the rate keeps the current token count: a rate
// update never grants an extra burst.
class TokenBucket {
 public:
  TokenBucket(double rate_bps, double depth_bytes = 2.0 * kMtuBytes, TimeSec now = 0);

  // Credits tokens earned at the current rate up to `now`.
  void Refill(TimeSec now);

  // Settles tokens earned at the old rate, then switches rates.
  void SetRate(double rate_bps, TimeSec now);

  // Refills, then takes `bytes` if available.
  bool TryConsume(uint32_t bytes, TimeSec now);

  // Seconds from `now` until `bytes` tokens are available; 0 if already so.
  // Infinite when the rate is zero and tokens are short.
  double TimeUntil(uint32_t bytes, TimeSec now) const;

  double rate() const { return rate_; }
  double depth() const { return depth_; }
  double tokens() const { return tokens_; }
  TimeSec last_refill() const { return last_refill_; }

 private:
  double rate_;   // bits/sec
  double depth_;  // bytes
  double tokens_; // bytes
  TimeSec last_refill_;
};

}  // namespace bundler::datapath

#endif  // BUNDLER_DATAPATH_TOKEN_BUCKET_H_
