#ifndef BUNDLER_PACKET_H_
#define BUNDLER_PACKET_H_

#include <cstdint>
#include <string>

namespace bundler {

// Simulator clock, in seconds.
using TimeSec = double;

constexpr uint32_t kMtuBytes = 1500;
constexpr uint32_t kHeaderBytes = 40;
constexpr uint32_t kMssBytes = kMtuBytes - kHeaderBytes;
constexpr uint32_t kAckBytes = 40;

constexpr uint32_t Ipv4(uint8_t a, uint8_t b, uint8_t c, uint8_t d) {
  return (uint32_t{a} << 24) | (uint32_t{b} << 16) | (uint32_t{c} << 8) | d;
}

std::string FormatIpv4(uint32_t addr);

struct FiveTuple {
  uint32_t src_addr = 0;
  uint32_t dst_addr = 0;
  uint16_t src_port = 0;
  uint16_t dst_port = 0;
  uint8_t protocol = 6;

  friend bool operator==(const FiveTuple&, const FiveTuple&) = default;
};

// FNV-1a over the 13-byte big-endian serialization of the tuple.
uint64_t HashFiveTuple(const FiveTuple& t);

struct FiveTupleHash {
  size_t operator()(const FiveTuple& t) const {
    return static_cast<size_t>(HashFiveTuple(t));
  }
};

// A data segment as seen by the boxes and the links. Fields after `size`
// are simulator bookkeeping: the boxes read only the header fields and the
// size, and never modify a packet.
struct Packet {
  FiveTuple tuple;
  uint16_t ip_id = 0;
  uint32_t size = 0;  // bytes on the wire, headers included

  uint64_t uid = 0;
  uint64_t flow_id = 0;
  int64_t seq = 0;          // segment index within the flow
  uint8_t traffic_class = 0;
  TimeSec enqueue_time = 0;  // set by whichever queue currently holds it
  TimeSec sendbox_departure = -1;
  TimeSec bottleneck_arrival = -1;
};

}  // namespace bundler

#endif  // BUNDLER_PACKET_H_
