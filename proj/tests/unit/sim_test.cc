#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <vector>

#include "bundler/sim/event_queue.h"
#include "bundler/sim/link.h"
#include "bundler/sim/simulator.h"
#include "bundler/sim/tcp.h"
#include "doctest.h"

using namespace bundler;
using namespace bundler::sim;

namespace {

Packet Pkt(uint64_t uid, uint16_t src_port = 1000, uint32_t size = kMtuBytes) {
  Packet p;
  p.tuple = {Ipv4(10, 0, 0, 1), Ipv4(10, 1, 0, 1), src_port, 80, 6};
  p.size = size;
  p.uid = uid;
  return p;
}

// Sender and receiver joined by a lossless, unbounded pipe with a fixed
// one-way delay; `drop` names segments lost on their first transmission.
struct Loopback {
  EventQueue events;
  TcpReceiver receiver;
  std::set<int64_t> drop;
  std::map<int64_t, int> sends;
  TcpSender sender;

  Loopback(TcpConfig config, int64_t segments, double delay)
      : receiver(segments),
        sender(events, config, segments, [this, delay](int64_t seq, bool) {
          ++sends[seq];
          if (sends[seq] == 1 && drop.contains(seq)) return;
          events.ScheduleIn(delay, [this, seq, delay] {
            const int64_t cum = receiver.OnSegment(seq);
            events.ScheduleIn(delay, [this, cum, seq] { sender.OnAck(cum, seq); });
          });
        }) {}
};

Scenario OneSite(double bandwidth, double delay, uint32_t buffer) {
  Scenario s;
  s.link.paths = {{bandwidth, delay}};
  s.link.buffer_packets = buffer;
  s.sites.push_back({});
  s.sites.back().name = "a";
  return s;
}

std::string Trace(const RunResult& r) {
  std::ostringstream out;
  WriteTrace(out, r);
  return out.str();
}

}  // namespace

TEST_CASE("events run in time order, ties in scheduling order") {
  EventQueue q;
  std::vector<int> order;
  q.Schedule(2.0, [&] { order.push_back(3); });
  q.Schedule(1.0, [&] { order.push_back(1); });
  q.Schedule(1.0, [&] { order.push_back(2); });
  q.Schedule(1.0, [&] {
    order.push_back(4);
    q.Schedule(0.5, [&] { order.push_back(5); });  // in the past: runs now
  });
  q.RunUntil(10);
  CHECK(order == std::vector<int>{1, 2, 4, 5, 3});
  CHECK(q.now() == 10);
  CHECK(q.executed() == 5);
  CHECK_FALSE(q.RunNext());
}

TEST_CASE("cubic slow start doubles per round") {
  Cubic c(10, /*hystart=*/false);
  for (int round = 0; round < 4; ++round) {
    const int acks = static_cast<int>(c.cwnd());
    for (int i = 0; i < acks; ++i) c.OnAck(1, 0.05, 0.05 * round);
  }
  CHECK(c.cwnd() == doctest::Approx(160));
}

TEST_CASE("cubic loss and recovery to the previous maximum") {
  Cubic c(10, /*hystart=*/false);
  while (c.cwnd() < 100) c.OnAck(1, 0.1, 0);
  c.OnAck(100 - c.cwnd(), 0.1, 0);
  REQUIRE(c.cwnd() == doctest::Approx(100));
  c.OnLoss(1.0);
  CHECK(c.cwnd() == doctest::Approx(70));
  CHECK(c.w_max() == doctest::Approx(100));
  // K = cbrt(100 * 0.3 / 0.4).
  CHECK(c.k() == doctest::Approx(std::cbrt(75.0)));

  // One window of ACKs per 100 ms round trip, spread evenly.
  const double rtt = 0.1;
  TimeSec t = 1.0;
  TimeSec epoch = -1;
  while (epoch < 0 || t - epoch < c.k()) {
    const int acks = static_cast<int>(c.cwnd());
    for (int i = 0; i < acks; ++i) {
      if (epoch < 0) epoch = t;
      c.OnAck(1, rtt, t);
      t += rtt / acks;
    }
  }
  CHECK(std::abs(c.cwnd() - 100) <= 1.0);
}

TEST_CASE("reno halves on loss and adds one packet per round") {
  Reno r(10);
  r.OnLoss(0);
  CHECK(r.cwnd() == doctest::Approx(5));
  for (int i = 0; i < 5; ++i) r.OnAck(1, 0.1, 0);
  CHECK(r.cwnd() == doctest::Approx(6).epsilon(0.02));
  r.OnRto(0);
  CHECK(r.cwnd() == 1);
  CHECK(r.ssthresh() == doctest::Approx(3).epsilon(0.02));
}

TEST_CASE("fixed window ignores every signal") {
  FixedWindow w(450);
  w.OnAck(100, 0.1, 0);
  w.OnLoss(1);
  w.OnRto(2);
  CHECK(w.cwnd() == 450);
  CHECK(FixedWindow(0).cwnd() == 1);
}

TEST_CASE("sender completes a lossless transfer without retransmissions") {
  Loopback lb(TcpConfig{}, 200, 0.01);
  lb.sender.Start();
  lb.events.RunUntil(10);
  CHECK(lb.sender.finished());
  CHECK(lb.receiver.complete());
  CHECK(lb.sender.retransmissions() == 0);
  CHECK(lb.sender.timeouts() == 0);
  CHECK(lb.sender.srtt() == doctest::Approx(0.02));
}

TEST_CASE("sack recovery resends exactly the lost segments with one reduction") {
  TcpConfig config;
  config.hystart = false;
  Loopback lb(config, 400, 0.01);
  lb.drop = {50, 53};
  lb.sender.Start();
  double cwnd_before = 0;
  bool saw_recovery = false;
  while (lb.events.RunNext()) {
    if (lb.sender.state() != TcpState::kRecovery) {
      cwnd_before = lb.sender.cc().cwnd();
    } else if (!saw_recovery) {
      saw_recovery = true;
      CHECK(lb.sender.cc().cwnd() == doctest::Approx(0.7 * cwnd_before));
    }
  }
  CHECK(saw_recovery);
  CHECK(lb.receiver.complete());
  CHECK(lb.sender.retransmissions() == 2);
  CHECK(lb.sends[50] == 2);
  CHECK(lb.sends[53] == 2);
  CHECK(lb.sender.timeouts() == 0);
}

TEST_CASE("a lost tail is recovered by timeout") {
  Loopback lb(TcpConfig{}, 5, 0.01);
  lb.drop = {4};
  lb.sender.Start();
  lb.events.RunUntil(10);
  CHECK(lb.receiver.complete());
  CHECK(lb.sender.timeouts() == 1);
  CHECK(lb.sender.cc().cwnd() >= 1);
}

TEST_CASE("receiver acks cumulatively across holes") {
  TcpReceiver r(4);
  CHECK(r.OnSegment(1) == 0);
  CHECK(r.OnSegment(2) == 0);
  CHECK(r.OnSegment(0) == 3);
  CHECK_FALSE(r.complete());
  CHECK(r.OnSegment(3) == 4);
  CHECK(r.complete());
}

TEST_CASE("single flow completion time matches the slow start model") {
  // 12 Mbps, 10 ms each way, no loss. 1 MB is 685 segments at 1 ms each.
  // The first window of 10 leaves back to back; the first ACK returns one
  // round trip after the first segment finishes, and from then on slow
  // start keeps the link busy. So the last segment finishes at
  // 20 ms + 1 ms + 675 ms and arrives 10 ms later: 0.706 s.
  const Scenario s = OneSite(12e6, 0.010, 1000);
  const double oracle = 0.020 + 0.001 + 0.675 + 0.010;
  CHECK(UnloadedFct(s, 1'000'000) == doctest::Approx(oracle).epsilon(0.05));
}

TEST_CASE("link never exceeds its capacity and preserves order") {
  EventQueue q;
  LinkConfig config;
  config.bandwidth = 10e6;
  config.delay = 0.005;
  config.queue.buffer_packets = 100000;
  std::vector<std::pair<TimeSec, Packet>> out;
  Link link(q, config, [&](Packet p) { out.emplace_back(q.now(), p); });
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<uint32_t> size(64, kMtuBytes);
  std::exponential_distribution<double> gap(1200);
  TimeSec t = 0;
  for (uint64_t uid = 0; uid < 5000; ++uid) {
    t += gap(rng);
    q.Schedule(t, [&link, p = Pkt(uid, 1000, size(rng))] { link.Send(p); });
  }
  q.RunUntil(1e3);
  REQUIRE(out.size() == 5000);
  for (size_t i = 1; i < out.size(); ++i) CHECK(out[i].second.uid > out[i - 1].second.uid);
  // Bytes delivered in [out[i].t, out[j].t] fit in the window plus one MTU.
  for (size_t i = 0; i < out.size(); i += 97) {
    uint64_t bytes = 0;
    for (size_t j = i; j < out.size() && j < i + 400; ++j) {
      bytes += out[j].second.size;
      const double window = out[j].first - out[i].first;
      CHECK(8.0 * bytes <= config.bandwidth * window + 8.0 * kMtuBytes + 1e-6);
    }
  }
}

TEST_CASE("poisson single queue matches the M/D/1 mean wait") {
  // MTU packets at 12 Mbps take 1 ms; arrivals at 700/s give rho = 0.7 and
  // a mean wait of rho / (2 mu (1 - rho)) = 1.1667 ms.
  EventQueue q;
  LinkConfig config;
  config.bandwidth = 12e6;
  config.delay = 0;
  config.queue.buffer_packets = 100000;
  double wait_sum = 0;
  uint64_t waits = 0;
  Link link(
      q, config, [](Packet) {}, {},
      [&](const Packet&, double wait) {
        wait_sum += wait;
        ++waits;
      });
  std::mt19937_64 rng(11);
  std::exponential_distribution<double> gap(700);
  TimeSec t = 0;
  for (uint64_t uid = 0; uid < 200000; ++uid) {
    t += gap(rng);
    q.Schedule(t, [&link, uid] { link.Send(Pkt(uid)); });
  }
  q.RunUntil(t + 10);
  REQUIRE(waits == 200000);
  const double rho = 0.7;
  const double mu = 1000;
  CHECK(wait_sum / waits == doctest::Approx(rho / (2 * mu * (1 - rho))).epsilon(0.15));
}

TEST_CASE("runs are deterministic under seed and conserve packets") {
  Scenario s = OneSite(48e6, 0.02, 100);
  s.duration = 8;
  s.warmup = 1;
  s.sites[0].bundler = true;
  s.sites[0].workload.load_bps = 40e6;
  s.sites[0].workload.backlogged_flows = 1;
  s.sites[0].scheduler.kind = datapath::SchedulerKind::kSfq;
  REQUIRE(Validate(s).empty());

  const RunResult a = Run(s);
  const RunResult b = Run(s);
  CHECK(Trace(a) == Trace(b));
  CHECK(a.events == b.events);
  CHECK(a.flows.size() > 100);

  s.seed = 2;
  CHECK(Trace(Run(s)) != Trace(a));

  CHECK(a.conservation.checks > 0);
  CHECK(a.conservation.violations == 0);
  CHECK(a.conservation.injected ==
        a.conservation.delivered + a.conservation.dropped + a.conservation.in_flight);
}

TEST_CASE("one path never reorders; imbalanced paths disable rate control") {
  Scenario s = OneSite(24e6, 0.02, 800);
  s.duration = 20;
  s.sites[0].bundler = true;
  s.sites[0].workload.backlogged_flows = 16;
  s.sites[0].scheduler.kind = datapath::SchedulerKind::kSfq;
  const RunResult single = Run(s);
  CHECK(single.sites[0].reorder_max == 0);
  CHECK(single.sites[0].mode_time[2] == 0);

  s.link.paths = {{6e6, 0.02}, {6e6, 0.025}, {6e6, 0.03}, {6e6, 0.035}};
  const RunResult multi = Run(s);
  CHECK(multi.sites[0].reorder_mean >= 0.05);
  CHECK(std::any_of(multi.modes.begin(), multi.modes.end(), [](const ModeChange& m) {
    return m.mode == control::ControllerMode::kDisabled;
  }));
}

TEST_CASE("closed-loop clients replay the same requests in every variant") {
  Scenario s = OneSite(96e6, 0.025, 800);
  s.duration = 10;
  s.warmup = 0;
  auto& w = s.sites[0].workload;
  w.arrivals = Arrivals::kClosedLoop;
  w.clients = 1000;
  w.think_time = 100;
  const RunResult plain = Run(s);
  s.sites[0].bundler = true;
  s.sites[0].scheduler.kind = datapath::SchedulerKind::kSfq;
  const RunResult boxed = Run(s);

  std::map<double, uint64_t> sizes;
  for (const auto& f : boxed.flows) sizes[f.t_start] = f.size;
  size_t early = 0;
  size_t matched = 0;
  for (const auto& f : plain.flows) {
    if (f.t_start >= 8) continue;
    ++early;
    const auto it = sizes.find(f.t_start);
    if (it == sizes.end()) continue;
    ++matched;
    CHECK(it->second == f.size);
  }
  REQUIRE(early > 50);
  CHECK(matched >= 0.9 * early);
}

TEST_CASE("validation names the offending field") {
  auto fields = [](const Scenario& s) {
    std::set<std::string> out;
    for (const auto& e : Validate(s)) out.insert(e.field);
    return out;
  };
  Scenario s = OneSite(96e6, 0.025, 800);
  CHECK(Validate(s).empty());

  Scenario bad = s;
  bad.duration = -1;
  CHECK(fields(bad).contains("duration"));
  bad = s;
  bad.warmup = s.duration;
  CHECK(fields(bad).contains("warmup"));
  bad = s;
  bad.link.paths.clear();
  CHECK(fields(bad).contains("link.paths"));
  bad = s;
  bad.link.paths[0].bandwidth = 0;
  CHECK(fields(bad).contains("link.path0.bandwidth"));
  bad = s;
  bad.sites[0].workload.clients = 0;
  CHECK(fields(bad).contains("site.a.clients"));
  bad = s;
  bad.sites.push_back(s.sites[0]);
  CHECK(fields(bad).contains("site.a.name"));
  bad = s;
  bad.sites.clear();
  CHECK(fields(bad).contains("sites"));
}
