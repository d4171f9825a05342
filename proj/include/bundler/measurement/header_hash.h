#ifndef BUNDLER_MEASUREMENT_HEADER_HASH_H_
#define BUNDLER_MEASUREMENT_HEADER_HASH_H_

#include <cstdint>
#include <span>

#include "bundler/packet.h"

namespace bundler::measurement {

// The packet-header fields both boxes hash to pick epoch boundaries. They
// must survive transit unchanged and vary from packet to packet.
struct HeaderSubset {
  uint16_t ip_id = 0;
  uint32_t dst_addr = 0;
  uint16_t dst_port = 0;

  friend bool operator==(const HeaderSubset&, const HeaderSubset&) = default;
};

inline HeaderSubset SubsetOf(const Packet& p) {
  return {p.ip_id, p.tuple.dst_addr, p.tuple.dst_port};
}

uint64_t Fnv1a64(std::span<const uint8_t> bytes);

// FNV-1a-64 over ip_id || dst_addr || dst_port, big-endian, 8 bytes.
uint64_t HashHeader(const HeaderSubset& h);

// True iff `hash` is a multiple of `sampling_period`. A zero period is a
// contract violation; callers validate periods when they are configured.
constexpr bool IsEpochBoundary(uint64_t hash, uint64_t sampling_period) {
  return hash % sampling_period == 0;
}

// Largest power of two <= max(P, 1) where P = packets per quarter min_rtt at
// `send_rate_bps`. Power-of-two periods nest: boundaries at 2k are a subset
// of boundaries at k, so a stale period on either box only adds or removes
// samples.
uint64_t ComputeSamplingPeriod(double min_rtt_sec, double send_rate_bps,
                               double mean_pkt_size_bytes);

}  // namespace bundler::measurement

#endif  // BUNDLER_MEASUREMENT_HEADER_HASH_H_
