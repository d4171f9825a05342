#include "bundler/middlebox/receivebox.h"

#include "bundler/measurement/header_hash.h"

namespace bundler::middlebox {

Receivebox::Receivebox(const BundleTable& table, uint64_t initial_sampling_period)
    : table_(table), state_(table.size(), BundleState{0, initial_sampling_period}) {}

std::optional<std::vector<uint8_t>> Receivebox::OnPacket(const Packet& p, TimeSec) {
  const auto idx = failed_ ? std::nullopt : table_.Match(p.tuple);
  if (!idx) {
    ++diag_.bypassed_packets;
    return std::nullopt;
  }
  BundleState& s = state_[*idx];
  s.bytes_rcvd += p.size;
  const uint64_t hash = measurement::HashHeader(measurement::SubsetOf(p));
  if (!measurement::IsEpochBoundary(hash, s.sampling_period)) return std::nullopt;
  ++diag_.acks_sent;
  return Encode(measurement::CongestionAck{table_.specs()[*idx].bundle_id, hash, s.bytes_rcvd});
}

void Receivebox::OnFeedback(std::span<const uint8_t> msg) {
  if (failed_) return;
  FeedbackMsg decoded;
  if (Decode(msg, decoded) != DecodeError::kNone) {
    ++diag_.feedback_malformed;
    return;
  }
  const auto* update = std::get_if<EpochUpdate>(&decoded);
  const auto idx = update ? table_.IndexOf(update->bundle_id) : std::nullopt;
  if (!idx || update->sampling_period == 0) {
    ++diag_.feedback_rejected;
    return;
  }
  state_[*idx].sampling_period = update->sampling_period;
  ++diag_.updates_applied;
}

}  // namespace bundler::middlebox
