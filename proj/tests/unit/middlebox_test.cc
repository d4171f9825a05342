#include <random>
#include <set>
#include <variant>

#include "bundler/measurement/header_hash.h"
#include "bundler/middlebox/bundle.h"
#include "bundler/middlebox/receivebox.h"
#include "bundler/middlebox/sendbox.h"
#include "bundler/middlebox/wire.h"
#include "doctest.h"

using namespace bundler;
using namespace bundler::middlebox;
using bundler::measurement::CongestionAck;

namespace {

BundleTable OneBundle(uint64_t period = 1) {
  BundleSpec spec;
  spec.bundle_id = 7;
  spec.src = {*ParsePrefix("10.0.0.0/16")};
  spec.dst = {*ParsePrefix("10.1.0.0/16")};
  spec.control.initial_rate = 96e6;
  (void)period;
  std::string err;
  return *BundleTable::Create({spec}, &err);
}

Packet Pkt(uint16_t ip_id, uint32_t dst = Ipv4(10, 1, 0, 5)) {
  Packet p;
  p.tuple = {Ipv4(10, 0, 0, 9), dst, 5000, 80, 6};
  p.ip_id = ip_id;
  p.size = kMtuBytes;
  p.uid = ip_id;
  return p;
}

}  // namespace

TEST_CASE("wire format layout") {
  const auto ack = Encode(CongestionAck{0x01020304, 0x1122334455667788ULL, 0x99});
  REQUIRE(ack.size() == 26);
  const std::vector<uint8_t> expect = {0x42, 0x55, 0x4E, 0x44, 1,    1,    1,    2,    3,
                                       4,    0x11, 0x22, 0x33, 0x44, 0x55, 0x66, 0x77, 0x88,
                                       0,    0,    0,    0,    0,    0,    0,    0x99};
  CHECK(ack == expect);
  const auto upd = Encode(EpochUpdate{5, 64});
  REQUIRE(upd.size() == 18);
  CHECK(upd[5] == 2);
  CHECK(upd[17] == 64);
}

TEST_CASE("wire round trip over random messages") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20000; ++i) {
    FeedbackMsg m;
    if (rng() % 2) {
      m = CongestionAck{static_cast<uint32_t>(rng()), rng(), rng()};
    } else {
      m = EpochUpdate{static_cast<uint32_t>(rng()), rng()};
    }
    FeedbackMsg back;
    REQUIRE(Decode(Encode(m), back) == DecodeError::kNone);
    CHECK(back == m);
  }
}

TEST_CASE("wire decode rejects damage") {
  auto bytes = Encode(CongestionAck{1, 2, 3});
  FeedbackMsg out;
  auto bad = bytes;
  bad[0] ^= 0xFF;
  CHECK(Decode(bad, out) == DecodeError::kBadMagic);
  bad = bytes;
  bad[4] = 2;
  CHECK(Decode(bad, out) == DecodeError::kBadVersion);
  bad = bytes;
  bad[5] = 9;
  CHECK(Decode(bad, out) == DecodeError::kBadType);
  bad = bytes;
  bad.pop_back();
  CHECK(Decode(bad, out) == DecodeError::kTruncated);
  bad = bytes;
  bad.push_back(0);
  CHECK(Decode(bad, out) == DecodeError::kBadLength);
  CHECK(Decode(std::span<const uint8_t>(bytes.data(), 4), out) == DecodeError::kTruncated);
}

TEST_CASE("prefixes and bundle tables") {
  auto p = ParsePrefix("10.1.2.3/8");
  REQUIRE(p);
  CHECK(p->addr == Ipv4(10, 0, 0, 0));
  CHECK(FormatPrefix(*p) == "10.0.0.0/8");
  CHECK(p->Contains(Ipv4(10, 200, 0, 1)));
  CHECK_FALSE(p->Contains(Ipv4(11, 0, 0, 1)));
  CHECK(ParsePrefix("1.2.3.4")->len == 32);
  CHECK(ParsePrefix("0.0.0.0/0")->Contains(Ipv4(1, 2, 3, 4)));
  for (const char* bad : {"1.2.3", "1.2.3.4/33", "256.1.1.1", "1.2.3.4/", "a.b.c.d", "1.2.3.4x"}) {
    CHECK_FALSE(ParsePrefix(bad));
  }

  BundleSpec a, b;
  a.bundle_id = 1;
  a.src = {*ParsePrefix("10.0.0.0/16")};
  a.dst = {*ParsePrefix("10.1.0.0/16")};
  b = a;
  b.bundle_id = 2;
  std::string err;
  CHECK_FALSE(BundleTable::Create({a, b}, &err));
  CHECK(err.find("overlap") != std::string::npos);
  b.dst = {*ParsePrefix("10.2.0.0/16")};
  auto table = BundleTable::Create({a, b}, &err);
  REQUIRE(table);
  FiveTuple t{Ipv4(10, 0, 3, 3), Ipv4(10, 2, 9, 9), 1, 2, 6};
  CHECK(table->Match(t) == 1u);
  t.dst_addr = Ipv4(10, 9, 0, 0);
  CHECK_FALSE(table->Match(t));
  b.bundle_id = 1;
  CHECK_FALSE(BundleTable::Create({a, b}, &err));
}

TEST_CASE("sendbox queues bundle traffic and bypasses the rest") {
  Sendbox sb(OneBundle(), {}, 0.0);
  CHECK(sb.OnPacket(Pkt(1), 0.0) == Sendbox::Verdict::kQueued);
  CHECK(sb.OnPacket(Pkt(2, Ipv4(192, 168, 0, 1)), 0.0) == Sendbox::Verdict::kBypass);
  CHECK(sb.diagnostics().bypassed_packets == 1);
  auto out = sb.Dequeue(0, 0.0);
  REQUIRE(out);
  CHECK(out->ip_id == 1);
  CHECK(out->tuple == Pkt(1).tuple);
  CHECK(sb.bundle(0).measurement.bytes_sent() == kMtuBytes);
  // Period 1 samples every packet.
  CHECK(sb.bundle(0).measurement.pending_count() == 1);
}

TEST_CASE("boundary sets agree between the boxes") {
  auto table = OneBundle();
  measurement::MeasurementConfig mc;
  mc.initial_sampling_period = 16;
  mc.eviction_before_min_rtt = 1e9;
  Sendbox sb(table, mc, 0.0);
  Receivebox rb(table, 16);
  std::set<uint64_t> at_receiver;
  uint64_t expected = 0;
  sb.bundle(0).datapath.SetRate(1e12, 0.0);
  for (uint32_t i = 0; i < 100000; ++i) {
    Packet p = Pkt(static_cast<uint16_t>(i), Ipv4(10, 1, (i >> 16) & 0xFF, 5));
    if (measurement::IsEpochBoundary(measurement::HashHeader(measurement::SubsetOf(p)), 16)) {
      ++expected;
    }
    REQUIRE(sb.OnPacket(p, i * 1e-6) == Sendbox::Verdict::kQueued);
    auto out = sb.Dequeue(0, i * 1e-6);
    REQUIRE(out);
    if (auto ack = rb.OnPacket(*out, i * 1e-6)) {
      FeedbackMsg m;
      REQUIRE(Decode(*ack, m) == DecodeError::kNone);
      at_receiver.insert(std::get<CongestionAck>(m).hash);
    }
  }
  CHECK(sb.bundle(0).measurement.diagnostics().boundaries_recorded == expected);
  CHECK(rb.diagnostics().acks_sent == expected);
  CHECK(at_receiver.size() <= expected);
}

TEST_CASE("receivebox counts bytes and acks boundaries") {
  Receivebox rb(OneBundle(), 1);
  auto a1 = rb.OnPacket(Pkt(1), 0.0);
  REQUIRE(a1);
  FeedbackMsg m;
  REQUIRE(Decode(*a1, m) == DecodeError::kNone);
  const auto& ack = std::get<CongestionAck>(m);
  CHECK(ack.bundle_id == 7);
  CHECK(ack.bytes_rcvd_cum == kMtuBytes);
  CHECK(ack.hash == measurement::HashHeader(measurement::SubsetOf(Pkt(1))));

  rb.OnFeedback(Encode(EpochUpdate{7, uint64_t{1} << 62}));
  CHECK(rb.sampling_period(0) == uint64_t{1} << 62);
  int acks = 0;
  for (uint16_t i = 2; i < 200; ++i) acks += rb.OnPacket(Pkt(i), 0.0).has_value();
  CHECK(acks == 0);
  CHECK(rb.bytes_received(0) == 199ull * kMtuBytes);

  rb.OnFeedback(Encode(EpochUpdate{7, 0}));
  rb.OnFeedback(Encode(EpochUpdate{99, 4}));
  CHECK(rb.diagnostics().feedback_rejected == 2);
  CHECK(rb.sampling_period(0) == uint64_t{1} << 62);
}

TEST_CASE("sendbox feedback handling") {
  Sendbox sb(OneBundle(), {}, 0.0);
  Receivebox rb(OneBundle(), 1);
  sb.OnPacket(Pkt(1), 0.0);
  auto out = sb.Dequeue(0, 0.0);
  auto ack = rb.OnPacket(*out, 0.02);
  REQUIRE(ack);
  auto corrupted = *ack;
  corrupted[1] = 0;
  sb.OnFeedback(corrupted, 0.05);
  CHECK(sb.diagnostics().feedback_malformed == 1);
  sb.OnFeedback(*ack, 0.05);
  CHECK(sb.bundle(0).measurement.diagnostics().signals_emitted == 1);
  sb.OnFeedback(*ack, 0.06);
  CHECK(sb.bundle(0).measurement.diagnostics().duplicate_acks == 1);
  sb.OnFeedback(Encode(CongestionAck{99, 1, 1}), 0.06);
  CHECK(sb.diagnostics().feedback_unknown_bundle == 1);
}

TEST_CASE("epoch updates are sent only when the period changes") {
  Sendbox sb(OneBundle(), {}, 0.0);
  Receivebox rb(OneBundle(), 1);
  // Steady 96 Mbps through a 50 ms path.
  const double gap = kMtuBytes * 8 / 96e6;
  sb.bundle(0).datapath.SetRate(1e12, 0.0);
  int updates = 0;
  uint64_t last_period = 0;
  std::vector<std::pair<double, std::vector<uint8_t>>> in_flight;
  double next_tick = 0.01;
  for (int i = 0; i < 40000; ++i) {
    const double t = i * gap;
    while (!in_flight.empty() && in_flight.front().first <= t) {
      sb.OnFeedback(in_flight.front().second, in_flight.front().first);
      in_flight.erase(in_flight.begin());
    }
    if (t >= next_tick) {
      for (const auto& msg : sb.Tick(t)) {
        rb.OnFeedback(msg);
        FeedbackMsg m;
        REQUIRE(Decode(msg, m) == DecodeError::kNone);
        const uint64_t period = std::get<EpochUpdate>(m).sampling_period;
        CHECK(period != last_period);
        last_period = period;
        ++updates;
      }
      // Keep the controller from throttling this synthetic stream.
      sb.bundle(0).datapath.SetRate(1e12, t);
      next_tick += 0.01;
    }
    sb.OnPacket(Pkt(static_cast<uint16_t>(i), Ipv4(10, 1, 0, static_cast<uint8_t>(i >> 16))), t);
    auto out = sb.Dequeue(0, t);
    REQUIRE(out);
    if (auto ack = rb.OnPacket(*out, t + 0.025)) in_flight.emplace_back(t + 0.05, *ack);
  }
  CHECK(updates >= 1);
  CHECK(updates <= 4);
  CHECK(rb.sampling_period(0) == 64);
}

TEST_CASE("failed sendbox drops its queue and then bypasses") {
  Sendbox sb(OneBundle(), {}, 0.0);
  sb.bundle(0).datapath.SetRate(1e3, 0.0);
  for (uint16_t i = 0; i < 10; ++i) sb.OnPacket(Pkt(i), 0.0);
  auto lost = sb.Fail(0.1);
  CHECK(lost.size() + 2 >= 10);
  CHECK(sb.OnPacket(Pkt(50), 0.2) == Sendbox::Verdict::kBypass);
}
