#ifndef BUNDLER_MIDDLEBOX_WIRE_H_
#define BUNDLER_MIDDLEBOX_WIRE_H_

#include <cstdint>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "bundler/measurement/epoch_measurement.h"

namespace bundler::middlebox {

// Out-of-band messages between the boxes. All fields big-endian:
//   magic u32 | version u8 | type u8 | bundle_id u32 | payload
// Ack payload is hash u64 | bytes_rcvd_cum u64 (26 bytes in all);
// EpochUpdate payload is sampling_period u64 (18 bytes in all).
constexpr uint32_t kFeedbackMagic = 0x42554E44;  // "BUND"
constexpr uint8_t kFeedbackVersion = 1;
constexpr size_t kFeedbackHeaderBytes = 10;
constexpr size_t kAckMsgBytes = kFeedbackHeaderBytes + 16;
constexpr size_t kEpochUpdateMsgBytes = kFeedbackHeaderBytes + 8;

enum class MsgType : uint8_t { kAck = 1, kEpochUpdate = 2 };

struct EpochUpdate {
  uint32_t bundle_id = 0;
  uint64_t sampling_period = 1;

  friend bool operator==(const EpochUpdate&, const EpochUpdate&) = default;
};

using FeedbackMsg = std::variant<measurement::CongestionAck, EpochUpdate>;

enum class DecodeError { kNone, kTruncated, kBadMagic, kBadVersion, kBadType, kBadLength };

std::string_view ToString(DecodeError e);

std::vector<uint8_t> Encode(const FeedbackMsg& msg);

// Decodes one message occupying exactly `bytes`.
DecodeError Decode(std::span<const uint8_t> bytes, FeedbackMsg& out);

}  // namespace bundler::middlebox

#endif  // BUNDLER_MIDDLEBOX_WIRE_H_
