#include "bundler/measurement/header_hash.h"

#include <algorithm>
#include <array>
#include <cmath>

namespace bundler::measurement {

namespace {
constexpr uint64_t kFnvOffsetBasis = 0xcbf29ce484222325ULL;
constexpr uint64_t kFnvPrime = 0x100000001b3ULL;
}  // namespace

uint64_t Fnv1a64(std::span<const uint8_t> bytes) {
  uint64_t h = kFnvOffsetBasis;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= kFnvPrime;
  }
  return h;
}

uint64_t HashHeader(const HeaderSubset& h) {
  const std::array<uint8_t, 8> bytes = {
      static_cast<uint8_t>(h.ip_id >> 8),     static_cast<uint8_t>(h.ip_id),
      static_cast<uint8_t>(h.dst_addr >> 24), static_cast<uint8_t>(h.dst_addr >> 16),
      static_cast<uint8_t>(h.dst_addr >> 8),  static_cast<uint8_t>(h.dst_addr),
      static_cast<uint8_t>(h.dst_port >> 8),  static_cast<uint8_t>(h.dst_port),
  };
  return Fnv1a64(bytes);
}

uint64_t ComputeSamplingPeriod(double min_rtt_sec, double send_rate_bps,
                               double mean_pkt_size_bytes) {
  const double per_epoch =
      (min_rtt_sec / 4.0) * send_rate_bps / (8.0 * mean_pkt_size_bytes);
  if (!(per_epoch >= 2.0)) return 1;  // also catches NaN
  // Cap well below 2^63 so the shift stays defined.
  const double capped = std::min(per_epoch, 0x1p62);
  uint64_t period = 1;
  while (static_cast<double>(period << 1) <= capped) period <<= 1;
  return period;
}

}  // namespace bundler::measurement
