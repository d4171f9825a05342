#include "bundler/middlebox/wire.h"

namespace bundler::middlebox {
namespace {

template <typename T>
void Put(std::vector<uint8_t>& out, T v) {
  for (int shift = 8 * (sizeof(T) - 1); shift >= 0; shift -= 8) {
    out.push_back(static_cast<uint8_t>(v >> shift));
  }
}

template <typename T>
T Get(std::span<const uint8_t> in, size_t& pos) {
  T v = 0;
  for (size_t i = 0; i < sizeof(T); ++i) v = static_cast<T>((v << 8) | in[pos + i]);
  pos += sizeof(T);
  return v;
}

void PutHeader(std::vector<uint8_t>& out, MsgType type, uint32_t bundle_id) {
  Put<uint32_t>(out, kFeedbackMagic);
  Put<uint8_t>(out, kFeedbackVersion);
  Put<uint8_t>(out, static_cast<uint8_t>(type));
  Put<uint32_t>(out, bundle_id);
}

}  // namespace

std::string_view ToString(DecodeError e) {
  switch (e) {
    case DecodeError::kNone:
      return "ok";
    case DecodeError::kTruncated:
      return "truncated";
    case DecodeError::kBadMagic:
      return "bad magic";
    case DecodeError::kBadVersion:
      return "bad version";
    case DecodeError::kBadType:
      return "bad type";
    case DecodeError::kBadLength:
      return "bad length";
  }
  return "?";
}

std::vector<uint8_t> Encode(const FeedbackMsg& msg) {
  std::vector<uint8_t> out;
  if (const auto* ack = std::get_if<measurement::CongestionAck>(&msg)) {
    out.reserve(kAckMsgBytes);
    PutHeader(out, MsgType::kAck, ack->bundle_id);
    Put<uint64_t>(out, ack->hash);
    Put<uint64_t>(out, ack->bytes_rcvd_cum);
  } else {
    const auto& update = std::get<EpochUpdate>(msg);
    out.reserve(kEpochUpdateMsgBytes);
    PutHeader(out, MsgType::kEpochUpdate, update.bundle_id);
    Put<uint64_t>(out, update.sampling_period);
  }
  return out;
}

DecodeError Decode(std::span<const uint8_t> bytes, FeedbackMsg& out) {
  if (bytes.size() < kFeedbackHeaderBytes) return DecodeError::kTruncated;
  size_t pos = 0;
  if (Get<uint32_t>(bytes, pos) != kFeedbackMagic) return DecodeError::kBadMagic;
  if (Get<uint8_t>(bytes, pos) != kFeedbackVersion) return DecodeError::kBadVersion;
  const uint8_t type = Get<uint8_t>(bytes, pos);
  const uint32_t bundle_id = Get<uint32_t>(bytes, pos);
  switch (static_cast<MsgType>(type)) {
    case MsgType::kAck: {
      if (bytes.size() < kAckMsgBytes) return DecodeError::kTruncated;
      if (bytes.size() != kAckMsgBytes) return DecodeError::kBadLength;
      measurement::CongestionAck ack;
      ack.bundle_id = bundle_id;
      ack.hash = Get<uint64_t>(bytes, pos);
      ack.bytes_rcvd_cum = Get<uint64_t>(bytes, pos);
      out = ack;
      return DecodeError::kNone;
    }
    case MsgType::kEpochUpdate: {
      if (bytes.size() < kEpochUpdateMsgBytes) return DecodeError::kTruncated;
      if (bytes.size() != kEpochUpdateMsgBytes) return DecodeError::kBadLength;
      EpochUpdate update;
      update.bundle_id = bundle_id;
      update.sampling_period = Get<uint64_t>(bytes, pos);
      out = update;
      return DecodeError::kNone;
    }
  }
  return DecodeError::kBadType;
}

}  // namespace bundler::middlebox
