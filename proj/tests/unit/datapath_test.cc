#include <cmath>
#include <map>
#include <random>
#include <vector>

#include "bundler/datapath/codel.h"
#include "bundler/datapath/datapath.h"
#include "bundler/datapath/drr.h"
#include "bundler/datapath/token_bucket.h"
#include "doctest.h"

using namespace bundler;
using namespace bundler::datapath;

namespace {

Packet Pkt(uint16_t src_port, int64_t seq, uint32_t size = kMtuBytes, uint8_t cls = 0) {
  Packet p;
  p.tuple = {Ipv4(10, 0, 0, 1), Ipv4(10, 1, 0, 1), src_port, 80, 6};
  p.size = size;
  p.seq = seq;
  p.traffic_class = cls;
  p.uid = static_cast<uint64_t>(src_port) << 32 | static_cast<uint64_t>(seq);
  return p;
}

DatapathConfig Config(SchedulerKind kind, double rate, size_t cap = 500) {
  DatapathConfig c;
  c.scheduler.kind = kind;
  c.scheduler.buffer_packets = cap;
  c.initial_rate = rate;
  return c;
}

// Drives a datapath the way the simulator does: dequeue whatever is
// eligible, then jump to the next eligibility instant.
std::vector<std::pair<TimeSec, Packet>> Drain(Datapath& dp, TimeSec now, TimeSec until) {
  std::vector<std::pair<TimeSec, Packet>> out;
  while (now <= until) {
    while (auto p = dp.Dequeue(now)) out.emplace_back(now, *p);
    auto next = dp.NextEligibleTime(now);
    if (!next) break;
    now = std::max(*next, now);
  }
  return out;
}

}  // namespace

TEST_CASE("token bucket eligibility") {
  TokenBucket tb(96e6, 2 * kMtuBytes, 0.0);
  REQUIRE(tb.TryConsume(3000, 0.0));
  CHECK(tb.TimeUntil(1500, 0.0) == doctest::Approx(1500 * 8 / 96e6));
  CHECK(tb.TimeUntil(1500, 0.0) == doctest::Approx(125e-6));
  CHECK_FALSE(tb.TryConsume(1500, 100e-6));
  CHECK(tb.TryConsume(1500, 125e-6));
}

TEST_CASE("token bucket rate change keeps tokens") {
  TokenBucket tb(8e6, 3000, 0.0);
  REQUIRE(tb.TryConsume(3000, 0.0));
  tb.SetRate(16e6, 0.0005);  // 500 bytes earned at the old rate
  CHECK(tb.tokens() == doctest::Approx(500));
  tb.SetRate(1e9, 0.0005);
  tb.SetRate(16e6, 0.0005);
  CHECK(tb.tokens() == doctest::Approx(500));  // last write wins, no refill
  tb.Refill(0.001);
  CHECK(tb.tokens() == doctest::Approx(1500));
}

TEST_CASE("rapid rate changes: output equals time-weighted mean rate") {
  Datapath dp(Config(SchedulerKind::kFifo, 10e6, 100000), 0.0);
  for (int i = 0; i < 20000; ++i) dp.Enqueue(Pkt(1, i), 0.0);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(5e6, 50e6);
  double integral = 0;
  uint64_t bytes = 0;
  TimeSec now = 0;
  const double dt = 0.001;
  // Skip the initial full bucket.
  while (dp.Dequeue(0.0)) bytes = 0;
  for (int k = 0; k < 1000; ++k) {
    const double r = u(rng);
    dp.SetRate(r, now);
    integral += r * dt / 8;
    const TimeSec end = now + dt;
    while (true) {
      while (auto p = dp.Dequeue(now)) bytes += p->size;
      auto next = dp.NextEligibleTime(now);
      if (!next || *next > end) break;
      now = *next;
    }
    now = end;
  }
  CHECK(std::abs(static_cast<double>(bytes) - integral) <= kMtuBytes);
}

TEST_CASE("fifo drop tail") {
  Datapath dp(Config(SchedulerKind::kFifo, 1e6, 100), 0.0);
  for (int i = 0; i < 100; ++i) REQUIRE(dp.Enqueue(Pkt(1, i), 0.0));
  CHECK_FALSE(dp.Enqueue(Pkt(1, 100), 0.0));
  CHECK(dp.packets() == 100);
  CHECK(dp.counters().dropped == 1);
  auto drops = dp.TakeDrops();
  REQUIRE(drops.size() == 1);
  CHECK(drops[0].seq == 100);
}

TEST_CASE("queue delay is the oldest packet's sojourn") {
  Datapath dp(Config(SchedulerKind::kSfq, 1e6), 0.0);
  CHECK(dp.QueueDelay(1.0) == 0.0);
  dp.Enqueue(Pkt(1, 0), 1.000);
  dp.Enqueue(Pkt(2, 0), 1.003);
  CHECK(dp.QueueDelay(1.007) == doctest::Approx(0.007));
  CHECK(dp.bytes() == 2 * kMtuBytes);
}

TEST_CASE("queue delay grows when arrivals outpace service") {
  Datapath dp(Config(SchedulerKind::kFifo, 6e6, 100000), 0.0);
  // Arrivals at 12 Mbps for one second, service at 6 Mbps.
  const double gap = kMtuBytes * 8 / 12e6;
  TimeSec now = 0;
  for (int i = 0; now < 1.0; ++i, now = i * gap) {
    dp.Enqueue(Pkt(1, i), now);
    while (dp.Dequeue(now)) {
    }
  }
  CHECK(dp.QueueDelay(1.0) == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("sfq longest-queue drop protects a new flow") {
  Datapath dp(Config(SchedulerKind::kSfq, 1e6, 10), 0.0);
  for (int i = 0; i < 10; ++i) REQUIRE(dp.Enqueue(Pkt(1, i), 0.0));
  CHECK(dp.Enqueue(Pkt(2, 0), 0.0));
  auto drops = dp.TakeDrops();
  REQUIRE(drops.size() == 1);
  CHECK(drops[0].tuple.src_port == 1);
  CHECK(drops[0].seq == 9);
  CHECK_FALSE(dp.Enqueue(Pkt(1, 10), 0.0));
}

TEST_CASE("sfq alternates between equal flows") {
  Datapath dp(Config(SchedulerKind::kSfq, 1e9, 100000), 0.0);
  for (int i = 0; i < 5000; ++i) {
    dp.Enqueue(Pkt(1, i), 0.0);
    dp.Enqueue(Pkt(2, i), 0.0);
  }
  auto out = Drain(dp, 0.0, 10.0);
  REQUIRE(out.size() == 10000);
  std::map<uint16_t, uint64_t> share;
  for (size_t i = 0; i < out.size(); ++i) {
    share[out[i].second.tuple.src_port] += out[i].second.size;
    if (i > 0) CHECK(out[i].second.tuple.src_port != out[i - 1].second.tuple.src_port);
  }
  CHECK(static_cast<double>(share[1]) / share[2] == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("sfq fairness with many flows and mixed sizes") {
  for (int n : {3, 8, 20}) {
    SchedulerConfig sc;
    sc.kind = SchedulerKind::kSfq;
    sc.exact_flows = true;
    sc.buffer_packets = 1000000;
    DrrScheduler drr(sc, false);
    std::vector<Packet> dropped;
    for (int i = 0; i < 2000; ++i) {
      for (int f = 0; f < n; ++f) {
        drr.Enqueue(Pkt(static_cast<uint16_t>(f + 1), i, f % 2 ? kMtuBytes : 500), 0.0, dropped);
      }
    }
    std::map<uint16_t, uint64_t> bytes;
    uint64_t total = 0;
    // Serve a prefix while every flow is still backlogged.
    const uint64_t budget = 500ull * 2000 * n / 2;
    while (total < budget) {
      REQUIRE(drr.Head(0.0, dropped) != nullptr);
      Packet p = drr.Pop();
      bytes[p.tuple.src_port] += p.size;
      total += p.size;
    }
    for (const auto& [port, b] : bytes) {
      CHECK(static_cast<double>(b) * n / total == doctest::Approx(1.0).epsilon(0.02));
    }
  }
}

TEST_CASE("strict priority serves class 0 first") {
  Datapath dp(Config(SchedulerKind::kPrio, 1e9), 0.0);
  for (int i = 0; i < 50; ++i) {
    dp.Enqueue(Pkt(1, i, kMtuBytes, 1), 0.0);
    dp.Enqueue(Pkt(2, i, kMtuBytes, 0), 0.0);
  }
  auto out = Drain(dp, 0.0, 1.0);
  REQUIRE(out.size() == 100);
  for (size_t i = 0; i < 50; ++i) CHECK(out[i].second.traffic_class == 0);
  for (size_t i = 50; i < 100; ++i) CHECK(out[i].second.traffic_class == 1);
}

TEST_CASE("no reordering within a flow under any policy") {
  for (auto kind : {SchedulerKind::kFifo, SchedulerKind::kSfq, SchedulerKind::kPrio,
                    SchedulerKind::kFqCodel}) {
    Datapath dp(Config(kind, 20e6, 200), 0.0);
    std::mt19937_64 rng(12);
    std::map<uint16_t, int64_t> next_seq, last_seen;
    TimeSec now = 0;
    for (int i = 0; i < 20000; ++i) {
      const uint16_t f = static_cast<uint16_t>(1 + rng() % 6);
      dp.Enqueue(Pkt(f, next_seq[f]++, kMtuBytes, static_cast<uint8_t>(f % 2)), now);
      now += 0.0004;
      while (auto p = dp.Dequeue(now)) {
        auto [it, fresh] = last_seen.try_emplace(p->tuple.src_port, -1);
        CHECK(p->seq > it->second);
        it->second = p->seq;
      }
    }
  }
}

TEST_CASE("work conservation and rate conformance") {
  for (auto kind : {SchedulerKind::kFifo, SchedulerKind::kSfq, SchedulerKind::kPrio}) {
    const double rate = 24e6;
    Datapath dp(Config(kind, rate, 100000), 0.0);
    std::mt19937_64 rng(13);
    std::exponential_distribution<double> gap(1.0 / 0.0004);
    std::vector<std::pair<TimeSec, uint32_t>> departures;
    TimeSec now = 0, next_arrival = 0;
    int seq = 0;
    while (now < 5.0) {
      if (next_arrival <= now) {
        dp.Enqueue(Pkt(static_cast<uint16_t>(1 + seq % 4), seq, 200 + rng() % 1301), now);
        ++seq;
        next_arrival = now + gap(rng);
      }
      while (auto p = dp.Dequeue(now)) departures.emplace_back(now, p->size);
      // Whenever packets wait, the bucket must be short of the head's size.
      if (!dp.empty()) CHECK(dp.bucket().tokens() < kMtuBytes + 1e-6);
      auto eligible = dp.NextEligibleTime(now);
      now = eligible ? std::min(*eligible, next_arrival) : next_arrival;
    }
    // Any window [t, t+w]: bytes <= rate*w/8 + depth.
    for (double w : {0.001, 0.01, 0.1, 1.0}) {
      size_t j = 0;
      uint64_t in_window = 0;
      for (size_t i = 0; i < departures.size(); ++i) {
        in_window += departures[i].second;
        while (departures[i].first - departures[j].first > w) in_window -= departures[j++].second;
        CHECK(static_cast<double>(in_window) <= rate * w / 8 + 2 * kMtuBytes + 1e-6);
      }
    }
  }
}

TEST_CASE("codel drop law") {
  CoDelState c;
  const CoDelParams p;
  const uint64_t behind = 10 * kMtuBytes;
  // Below target, or too little queued behind the head: never drop.
  CHECK_FALSE(c.ShouldDrop(0.0, 0.004, behind, p));
  CHECK_FALSE(c.ShouldDrop(0.5, 0.5, kMtuBytes, p));
  // Above target: the first drop waits one full interval.
  CHECK_FALSE(c.ShouldDrop(1.0, 0.006, behind, p));
  CHECK_FALSE(c.ShouldDrop(1.099, 0.006, behind, p));
  CHECK(c.ShouldDrop(1.100, 0.006, behind, p));
  CHECK(c.dropping());
  CHECK(c.count() == 1);
  // Subsequent drops are spaced interval/sqrt(count).
  double t = 1.100;
  for (uint32_t n = 2; n <= 6; ++n) {
    const double spacing = p.interval / std::sqrt(static_cast<double>(n - 1));
    CHECK_FALSE(c.ShouldDrop(t + spacing - 1e-6, 0.006, behind, p));
    CHECK(c.ShouldDrop(t + spacing, 0.006, behind, p));
    CHECK(c.count() == n);
    t += spacing;
  }
  // Sojourn back under target ends the dropping state.
  CHECK_FALSE(c.ShouldDrop(t + 1, 0.001, behind, p));
  CHECK_FALSE(c.dropping());
}

TEST_CASE("fq_codel drops from a persistently standing queue") {
  Datapath dp(Config(SchedulerKind::kFqCodel, 12e6, 100000), 0.0);
  const double gap = kMtuBytes * 8 / 24e6;
  TimeSec now = 0;
  for (int i = 0; now < 2.0; ++i, now = i * gap) {
    dp.Enqueue(Pkt(1, i), now);
    while (dp.Dequeue(now)) {
    }
  }
  CHECK(dp.counters().dropped > 0);
  CHECK(dp.counters().enqueued == dp.counters().dequeued + dp.counters().dropped + dp.packets());
}

TEST_CASE("set rate doubling halves the departure gap") {
  Datapath dp(Config(SchedulerKind::kFifo, 12e6, 1000), 0.0);
  for (int i = 0; i < 200; ++i) dp.Enqueue(Pkt(1, i), 0.0);
  auto first = Drain(dp, 0.0, 0.05);
  const double gap1 = first.back().first - first[first.size() - 2].first;
  dp.SetRate(24e6, first.back().first);
  auto second = Drain(dp, first.back().first, 0.1);
  REQUIRE(second.size() > 3);
  const double gap2 = second[2].first - second[1].first;
  CHECK(gap1 == doctest::Approx(1e-3));
  CHECK(gap2 == doctest::Approx(gap1 / 2));
}

TEST_CASE("flush empties the datapath") {
  Datapath dp(Config(SchedulerKind::kSfq, 1e6), 0.0);
  for (int i = 0; i < 30; ++i) dp.Enqueue(Pkt(static_cast<uint16_t>(i % 3), i), 0.0);
  auto lost = dp.Flush(0.1);
  CHECK(lost.size() == 30);
  CHECK(dp.empty());
  CHECK(dp.QueueDelay(0.2) == 0.0);
}
