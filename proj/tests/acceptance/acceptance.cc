// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails. Arguments, when given, select criteria by number.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "bundler/cli/config.h"
#include "bundler/cli/experiment.h"
#include "bundler/cli/presets.h"
#include "bundler/control/pulse.h"
#include "bundler/datapath/datapath.h"
#include "bundler/datapath/drr.h"
#include "bundler/measurement/header_hash.h"
#include "bundler/middlebox/wire.h"
#include "bundler/sim/link.h"
#include "bundler/sim/simulator.h"
#include "bundler/workload/workload.h"

using namespace bundler;

namespace {

using Clock = std::chrono::steady_clock;
using control::ControllerMode;

constexpr size_t kCompetitive = static_cast<size_t>(ControllerMode::kCompetitive);
constexpr size_t kDisabled = static_cast<size_t>(ControllerMode::kDisabled);

struct Outcome {
  bool pass = true;
  std::string detail;

  // Records one check; details accumulate as "; "-separated clauses.
  void Check(bool ok, const std::string& what) {
    pass = pass && ok;
    if (!detail.empty()) detail += "; ";
    detail += what + (ok ? "" : " [x]");
  }
};

std::string Fmt(double v, int precision = 3) {
  std::ostringstream o;
  o << std::fixed << std::setprecision(precision) << v;
  return o.str();
}

std::string Pct(double frac) { return Fmt(100 * frac, 1) + "%"; }

double Seconds(Clock::time_point since) {
  return std::chrono::duration<double>(Clock::now() - since).count();
}

// ---------------------------------------------------------------- runs

struct ExperimentRun {
  std::vector<cli::JobResult> results;
  std::vector<cli::SummaryRow> rows;
  double wall_seconds = 0;

  const cli::SummaryRow* Row(const std::string& variant, const std::string& site,
                             const std::string& band = "all") const {
    for (const auto& r : rows) {
      if (r.seed == "all" && r.variant == variant && r.site == site && r.band == band) return &r;
    }
    return nullptr;
  }
  std::vector<const cli::JobResult*> Jobs(const std::string& variant) const {
    std::vector<const cli::JobResult*> out;
    for (const auto& j : results) {
      if (j.variant == variant) out.push_back(&j);
    }
    return out;
  }
};

// Every run made by the suite, for the conservation property.
std::vector<sim::Conservation>& AllConservation() {
  static std::vector<sim::Conservation> all;
  return all;
}

ExperimentRun RunText(std::string_view text, const std::vector<std::string>& overrides = {}) {
  std::vector<cli::ConfigError> errors;
  const auto config = cli::ParseConfig(text, &errors);
  std::vector<cli::Setting> settings;
  for (const auto& o : overrides) settings.push_back(*cli::ParseOverride(o, nullptr));
  const auto jobs = config ? cli::PlanJobs(*config, settings, {}, &errors) : std::nullopt;
  if (!jobs) {
    for (const auto& e : errors) std::cerr << e.ToString() << '\n';
    std::abort();
  }
  ExperimentRun run;
  const auto start = Clock::now();
  cli::SharedFctCache cache;
  run.results = cli::RunJobs(*jobs, std::max(1u, std::thread::hardware_concurrency()), cache);
  run.wall_seconds = Seconds(start);
  run.rows = cli::Summarize(run.results);
  for (const auto& j : run.results) AllConservation().push_back(j.run.conservation);
  return run;
}

ExperimentRun RunPreset(std::string_view name, const std::vector<std::string>& overrides = {}) {
  return RunText(cli::FindPreset(name)->text, overrides);
}

const ExperimentRun& Fig6() {
  static const ExperimentRun run = RunPreset("fig6-fct");
  return run;
}

// Mode in force at time t from a site's change log.
ControllerMode ModeAt(const std::vector<sim::ModeChange>& log, const std::string& site, double t) {
  ControllerMode mode = ControllerMode::kDelayControl;
  for (const auto& m : log) {
    if (m.site != site) continue;
    if (m.t > t) break;
    mode = m.mode;
  }
  return mode;
}

// Share of [t0, t1) spent in `want`, sampled every 10 ms.
double ModeShare(const std::vector<sim::ModeChange>& log, const std::string& site, double t0,
                 double t1, ControllerMode want) {
  int in = 0;
  int all = 0;
  for (double t = t0; t < t1; t += 0.01, ++all) in += ModeAt(log, site, t) == want;
  return all ? static_cast<double>(in) / all : 0;
}

// Mean of a site's throughput samples whose interval lies in (t0, t1].
double MeanThroughput(const sim::RunResult& r, const std::string& site, double t0, double t1) {
  double sum = 0;
  int n = 0;
  for (const auto& s : r.tput) {
    if (s.site == site && s.t > t0 + 1e-9 && s.t <= t1 + 1e-9) {
      sum += s.bps;
      ++n;
    }
  }
  return n ? sum / n : 0;
}

// ------------------------------------------------------------ criteria

Outcome QueueShifting() {
  const auto run = RunPreset("fig2-queueshift");
  const auto& stats = run.Jobs("bundler").front()->run.sites.front();
  const double total = stats.mean_sendbox_wait + stats.mean_network_wait;
  const double share = total > 0 ? stats.mean_sendbox_wait / total : 0;
  const double util = stats.throughput / 96e6;
  Outcome o;
  o.Check(share >= 0.80, "sendbox share of queueing " + Pct(share) + " >= 80%");
  o.Check(util >= 0.90, "utilization " + Pct(util) + " >= 90%");
  o.Check(run.wall_seconds < 60, "runtime " + Fmt(run.wall_seconds, 1) + " s < 60 s");
  return o;
}

Outcome FctImprovement() {
  const auto& run = Fig6();
  const auto* sq = run.Row("statusquo", "web");
  const auto* innet = run.Row("innetwork", "web");
  const auto* sfq = run.Row("bundler_sfq", "web");
  const auto* fifo = run.Row("bundler_fifo", "web");
  Outcome o;
  if (!sq || !innet || !sfq || !fifo || !sq->p50_slowdown || !sfq->p50_slowdown) {
    o.Check(false, "missing fig6 rows");
    return o;
  }
  const double drop50 = 1 - *sfq->p50_slowdown / *sq->p50_slowdown;
  const double drop99 = 1 - *sfq->p99_slowdown / *sq->p99_slowdown;
  o.Check(drop50 >= 0.20, "SFQ median " + Fmt(*sfq->p50_slowdown) + " vs StatusQuo " +
                              Fmt(*sq->p50_slowdown) + ", " + Pct(drop50) + " lower >= 20%");
  o.Check(*innet->p50_slowdown <= *sfq->p50_slowdown,
          "In-Network median " + Fmt(*innet->p50_slowdown) + " <= SFQ");
  o.Check(*fifo->p50_slowdown >= *sq->p50_slowdown,
          "Bundler+FIFO median " + Fmt(*fifo->p50_slowdown) + " >= StatusQuo");
  o.Check(drop99 >= 0.35, "SFQ p99 " + Fmt(*sfq->p99_slowdown, 2) + " vs " +
                              Fmt(*sq->p99_slowdown, 2) + ", " + Pct(drop99) + " lower >= 35%");
  return o;
}

Outcome CrossTrafficFsm() {
  // Phases change at 60 s and 120 s; each transition gets 15 s to happen.
  const auto run = RunPreset("fig7-crosstraffic");
  const auto& boxed = run.Jobs("bundler").front()->run;
  const auto& plain = run.Jobs("statusquo").front()->run;
  const double warmup = run.Jobs("bundler").front()->scenario.warmup;
  constexpr double kSettled = 0.8;
  const double s1 = ModeShare(boxed.modes, "bundle", warmup, 60, ControllerMode::kDelayControl);
  const double s2 = ModeShare(boxed.modes, "bundle", 75, 120, ControllerMode::kCompetitive);
  const double s3 = ModeShare(boxed.modes, "bundle", 135, 180, ControllerMode::kDelayControl);
  Outcome o;
  o.Check(s1 >= kSettled && s2 >= kSettled && s3 >= kSettled,
          "time in expected mode " + Pct(s1) + " / " + Pct(s2) + " / " + Pct(s3) +
              " (each >= 80% once settled)");

  // Fair share against one elastic flow: half the link, or the bundle's
  // own demand if that is smaller.
  const double demand = MeanThroughput(plain, "bundle", warmup, 60);
  const double fair = std::min(demand, 96e6 / 2);
  const double got = MeanThroughput(boxed, "bundle", 75, 120);
  o.Check(got >= 0.75 * fair, "Competitive-phase throughput " + Fmt(got / 1e6, 1) +
                                  " Mbps >= 75% of fair share " + Fmt(fair / 1e6, 1) + " Mbps");

  const auto* sq = run.Row("statusquo", "short");
  const auto* bx = run.Row("bundler", "short");
  if (!sq || !bx || !sq->p50_fct || !bx->p50_fct) {
    o.Check(false, "missing short-flow rows");
    return o;
  }
  const double ratio = *bx->p50_fct / *sq->p50_fct;
  o.Check(ratio <= 1.25, "short-flow median FCT " + Fmt(ratio, 2) + "x StatusQuo <= 1.25x");
  return o;
}

Outcome Multipath() {
  const auto run = RunPreset("multipath-sweep");
  Outcome o;
  double single_max = 0;
  double multi_min = 1;
  int single_disabled = 0;
  int multi_enabled = 0;
  int singles = 0;
  int multis = 0;
  for (const auto& j : run.results) {
    const auto& st = j.run.sites.front();
    const bool single = j.scenario.link.paths.size() == 1;
    const bool disabled = std::any_of(j.run.modes.begin(), j.run.modes.end(), [](const auto& m) {
      return m.mode == ControllerMode::kDisabled;
    });
    if (single) {
      ++singles;
      single_max = std::max(single_max, st.reorder_mean);
      single_disabled += disabled || st.mode_time[kDisabled] > 0;
    } else {
      ++multis;
      multi_min = std::min(multi_min, st.reorder_mean);
      multi_enabled += !disabled;
    }
  }
  o.Check(singles == 4 && single_max <= 0.05 && single_disabled == 0,
          std::to_string(singles) + " single-path runs: max reordering " + Fmt(single_max, 4) +
              " <= 0.05, " + std::to_string(single_disabled) + " disabled");
  o.Check(multis == 12 && multi_min >= 0.05 && multi_enabled == 0,
          std::to_string(multis) + " multipath runs: min reordering " + Fmt(multi_min, 4) +
              " >= 0.05, " + std::to_string(multi_enabled) + " never disabled");
  return o;
}

Outcome Fidelity() {
  const auto& run = Fig6();
  size_t n = 0;
  size_t rtt_ok = 0;
  size_t rate_ok = 0;
  for (const auto* j : run.Jobs("bundler_sfq")) {
    for (const auto& f : j->run.fidelity) {
      ++n;
      rtt_ok += std::abs(f.est_rtt - f.true_rtt) <= 1.2e-3;
      rate_ok += std::abs(f.est_rate - f.true_rate) <= 4e6;
    }
  }
  Outcome o;
  const double rtt = n ? static_cast<double>(rtt_ok) / n : 0;
  const double rate = n ? static_cast<double>(rate_ok) / n : 0;
  o.Check(rtt >= 0.8, "RTT estimates within 1.2 ms: " + Pct(rtt) + " >= 80%");
  o.Check(rate >= 0.8, "rate estimates within 4 Mbps: " + Pct(rate) + " >= 80%");
  o.detail += " (" + std::to_string(n) + " samples)";
  return o;
}

Outcome PiHoldback() {
  // A backlogged bundle held in Competitive mode against backlogged Cubic.
  constexpr std::string_view kText = R"([scenario]
name = pi-holdback
duration = 60
warmup = 10
seeds = 1
[link]
paths = 96M@25ms
buffer = 800
[site bundle]
bundler = true
backlogged = 4
scheduler = sfq
control.mode = Competitive
[site cross]
cross = true
backlogged = 2
)";
  const auto run = RunText(kText);
  const auto& st = run.results.front().run.sites.front();
  const double ms = 1e3 * st.mean_sendbox_delay_by_mode[kCompetitive];
  Outcome o;
  o.Check(st.sendbox_delay_samples_by_mode[kCompetitive] > 0 && ms >= 5 && ms <= 15,
          "mean sendbox queue delay " + Fmt(ms, 2) + " ms in [5, 15] ms");
  return o;
}

Outcome Proxy() {
  const auto run = RunPreset("proxy-idealized");
  const auto* cm = run.Row("bundler_cubic", "web", "medium");
  const auto* pm = run.Row("bundler_proxy", "web", "medium");
  const auto* cs = run.Row("bundler_cubic", "web", "short");
  const auto* ps = run.Row("bundler_proxy", "web", "short");
  Outcome o;
  if (!cm || !pm || !cs || !ps) {
    o.Check(false, "missing proxy rows");
    return o;
  }
  o.Check(*pm->p50_slowdown < *cm->p50_slowdown, "medium median " + Fmt(*pm->p50_slowdown) +
                                                     " < Cubic " + Fmt(*cm->p50_slowdown));
  const double rel = std::abs(*ps->p50_slowdown / *cs->p50_slowdown - 1);
  o.Check(rel <= 0.10, "short medians " + Fmt(*ps->p50_slowdown) + " vs " +
                           Fmt(*cs->p50_slowdown) + " differ " + Pct(rel) + " <= 10%");
  return o;
}

Outcome TwoBundles() {
  const auto run = RunPreset("fig10-twobundles");
  Outcome o;
  for (const std::string split : {"1to1", "2to1"}) {
    for (const std::string site : {"a", "b"}) {
      const auto* sq = run.Row("statusquo_" + split, site);
      const auto* bx = run.Row("bundler_" + split, site);
      if (!sq || !bx || !sq->p50_fct || !bx->p50_fct) {
        o.Check(false, split + " " + site + " missing");
        continue;
      }
      o.Check(*bx->p50_fct < *sq->p50_fct, split + " bundle " + site + " median FCT " +
                                               Fmt(1e3 * *bx->p50_fct, 1) + " ms < " +
                                               Fmt(1e3 * *sq->p50_fct, 1) + " ms");
    }
  }
  return o;
}

// Properties checked without tolerance.
Outcome Properties() {
  Outcome o;
  std::mt19937_64 rng(2024);

  {  // Boundaries for period 2p are a subset of those for p.
    bool nested = true;
    for (int i = 0; i < 200000; ++i) {
      const uint64_t h = measurement::HashHeader(
          {static_cast<uint16_t>(rng()), static_cast<uint32_t>(rng()), static_cast<uint16_t>(rng())});
      for (uint64_t p = 1; p < (1u << 12); p *= 2) {
        if (measurement::IsEpochBoundary(h, 2 * p) && !measurement::IsEpochBoundary(h, p)) {
          nested = false;
        }
      }
    }
    o.Check(nested, "power-of-two sampling nests");
  }
  {  // Wire format.
    bool ok = true;
    for (int i = 0; i < 20000; ++i) {
      middlebox::FeedbackMsg msg;
      if (i % 2) {
        msg = measurement::CongestionAck{static_cast<uint32_t>(rng()), rng(), rng()};
      } else {
        msg = middlebox::EpochUpdate{static_cast<uint32_t>(rng()), rng() | 1};
      }
      middlebox::FeedbackMsg back;
      const auto bytes = middlebox::Encode(msg);
      ok = ok && middlebox::Decode(bytes, back) == middlebox::DecodeError::kNone && back == msg;
    }
    o.Check(ok, "wire round trip");
  }
  {  // Per-flow order and rate conformance through every scheduler.
    bool ordered = true;
    bool conforms = true;
    for (auto kind : {datapath::SchedulerKind::kFifo, datapath::SchedulerKind::kSfq,
                      datapath::SchedulerKind::kPrio, datapath::SchedulerKind::kFqCodel}) {
      datapath::DatapathConfig config;
      config.scheduler.kind = kind;
      config.scheduler.buffer_packets = 100000;
      config.initial_rate = 24e6;
      datapath::Datapath dp(config, 0);
      std::map<uint16_t, int64_t> next_seq;
      for (int i = 0; i < 4000; ++i) {
        Packet p;
        const auto port = static_cast<uint16_t>(1 + rng() % 13);
        p.tuple = {Ipv4(10, 0, 0, 1), Ipv4(10, 1, 0, 1), port, 80, 6};
        p.size = 64 + static_cast<uint32_t>(rng() % (kMtuBytes - 63));
        p.seq = next_seq[port]++;
        p.traffic_class = static_cast<uint8_t>(port % 2);
        dp.Enqueue(p, 0);
      }
      std::map<uint16_t, int64_t> last;
      double now = 0;
      uint64_t bytes = 0;
      while (!dp.empty()) {
        while (auto p = dp.Dequeue(now)) {
          auto [it, fresh] = last.try_emplace(p->tuple.src_port, p->seq);
          if (!fresh) {
            ordered = ordered && p->seq > it->second;
            it->second = p->seq;
          }
          bytes += p->size;
          // The bucket forgives 1e-6 bytes of refill rounding.
          conforms = conforms && bytes <= 24e6 * now / 8 + config.bucket_depth + 1e-6;
        }
        const auto next = dp.NextEligibleTime(now);
        if (!next) break;
        now = std::max(now, *next);
      }
    }
    o.Check(ordered, "no reordering within a flow");
    o.Check(conforms, "pacer never exceeds rate plus bucket depth");
  }
  {  // Equal byte shares for backlogged flows under SFQ.
    datapath::SchedulerConfig sc;
    sc.kind = datapath::SchedulerKind::kSfq;
    sc.exact_flows = true;
    sc.buffer_packets = 1000000;
    datapath::DrrScheduler drr(sc, false);
    std::vector<Packet> dropped;
    constexpr int kFlows = 10;
    for (int i = 0; i < 3000; ++i) {
      for (int f = 0; f < kFlows; ++f) {
        Packet p;
        p.tuple = {Ipv4(10, 0, 0, 1), Ipv4(10, 1, 0, 1), static_cast<uint16_t>(f + 1), 80, 6};
        p.size = f % 3 == 0 ? 300 : (f % 3 == 1 ? 900 : kMtuBytes);
        drr.Enqueue(p, 0, dropped);
      }
    }
    std::map<uint16_t, double> share;
    double total = 0;
    while (total < 300.0 * 3000 * kFlows / 2) {
      drr.Head(0, dropped);
      const Packet p = drr.Pop();
      share[p.tuple.src_port] += p.size;
      total += p.size;
    }
    double worst = 0;
    for (const auto& [port, b] : share) worst = std::max(worst, std::abs(b * kFlows / total - 1));
    o.Check(worst <= 0.02, "SFQ shares within " + Pct(worst) + " of equal (<= 2%)");
  }
  {  // Pulse neutrality, by independent numeric integration over k periods.
    double worst = 0;
    for (int k = 1; k <= 5; ++k) {
      control::PulseState p{0.2, 24e6, 0.0137 * k};
      const double base = 48e6;
      const double t0 = 1.234 * k;
      const int n = 200000 * k;  // Simpson; the kinks fall on grid points
      const double h = k * p.period / n;
      double sum = 0;
      for (int i = 0; i <= n; ++i) {
        const double w = i == 0 || i == n ? 1 : (i % 2 ? 4 : 2);
        sum += w * control::PulseRate(p, base, t0 + i * h);
      }
      const double mean = sum * h / 3 / (k * p.period);
      worst = std::max(worst, std::abs(mean / base - 1));
    }
    o.Check(worst <= 1e-6, "pulse mean over whole periods off by " + Fmt(worst * 1e6, 3) + "e-6");
  }
  {  // Determinism under seed, and conservation in every run so far.
    std::vector<std::string> traces;
    for (int i = 0; i < 2; ++i) {
      const auto run = RunPreset("fig2-queueshift", {"scenario.duration=10"});
      std::ostringstream out;
      for (const auto& j : run.results) sim::WriteTrace(out, j.run);
      traces.push_back(out.str());
    }
    o.Check(traces[0] == traces[1] && !traces[0].empty(), "identical traces under one seed");
    uint64_t checks = 0;
    uint64_t violations = 0;
    for (const auto& c : AllConservation()) {
      checks += c.checks;
      violations += c.violations;
      violations += c.injected != c.delivered + c.dropped + c.in_flight;
    }
    o.Check(checks > 0 && violations == 0, "packet conservation over " +
                                               std::to_string(AllConservation().size()) +
                                               " runs, " + std::to_string(checks) + " checks");
  }
  return o;
}

// FNV-1a 64 written from its definition, independent of the library.
uint64_t ReferenceFnv1a(const std::vector<uint8_t>& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (uint8_t b : bytes) {
    h ^= b;
    h *= 1099511628211ull;
  }
  return h;
}

Outcome Oracles() {
  Outcome o;
  {  // See the derivation in the simulator unit tests: 20 + 1 + 675 + 10 ms.
    sim::Scenario s;
    s.link.paths = {{12e6, 0.010}};
    s.link.buffer_packets = 1000;
    s.sites.push_back({});
    s.sites.back().name = "a";
    const double fct = sim::UnloadedFct(s, 1'000'000);
    const double oracle = 0.706;
    const double err = std::abs(fct / oracle - 1);
    o.Check(err <= 0.05, "1 MB FCT " + Fmt(fct, 4) + " s vs model " + Fmt(oracle, 3) + " s, " +
                             Pct(err) + " <= 5%");
  }
  {
    const auto bytes = [](std::string_view s) { return std::vector<uint8_t>(s.begin(), s.end()); };
    // Published FNV-1a 64 test vectors.
    bool ok = measurement::Fnv1a64({}) == 0xcbf29ce484222325ull &&
              measurement::Fnv1a64(bytes("a")) == 0xaf63dc4c8601ec8cull &&
              measurement::Fnv1a64(bytes("foobar")) == 0x85944171f73967e8ull;
    std::mt19937_64 rng(99);
    for (int i = 0; i < 10000; ++i) {
      std::vector<uint8_t> v(rng() % 40);
      for (auto& b : v) b = static_cast<uint8_t>(rng());
      ok = ok && measurement::Fnv1a64(v) == ReferenceFnv1a(v);
    }
    o.Check(ok, "FNV-1a equals the reference on test vectors and 10000 random inputs");
  }
  {  // Poisson arrivals of 1 ms packets at rho = 0.7: W = rho / (2 mu (1 - rho)).
    sim::EventQueue q;
    sim::LinkConfig config;
    config.bandwidth = 12e6;
    config.delay = 0;
    config.queue.buffer_packets = 1000000;
    double sum = 0;
    uint64_t n = 0;
    sim::Link link(
        q, config, [](Packet) {}, {},
        [&](const Packet&, double wait) {
          sum += wait;
          ++n;
        });
    std::mt19937_64 rng(5);
    std::exponential_distribution<double> gap(700);
    double t = 0;
    for (uint64_t uid = 0; uid < 400000; ++uid) {
      t += gap(rng);
      q.Schedule(t, [&link, uid] {
        Packet p;
        p.size = kMtuBytes;
        p.uid = uid;
        link.Send(p);
      });
    }
    q.RunUntil(t + 10);
    const double oracle = 0.7 / (2 * 1000 * 0.3);
    const double err = std::abs(sum / n / oracle - 1);
    o.Check(err <= 0.15, "M/D/1 mean wait " + Fmt(1e3 * sum / n, 3) + " ms vs " +
                             Fmt(1e3 * oracle, 3) + " ms, " + Pct(err) + " <= 15%");
  }
  return o;
}

struct Criterion {
  int id;
  std::string_view name;
  Outcome (*run)();
};

constexpr Criterion kCriteria[] = {
    {1, "queue shifting", QueueShifting},
    {2, "completion-time improvement", FctImprovement},
    {3, "cross-traffic mode switching", CrossTrafficFsm},
    {4, "multipath detection", Multipath},
    {5, "measurement fidelity", Fidelity},
    {6, "PI holdback", PiHoldback},
    {7, "idealized proxy", Proxy},
    {8, "two bundles", TwoBundles},
    {9, "property suites", Properties},
    {10, "oracle equivalences", Oracles},
};

}  // namespace

int main(int argc, char** argv) {
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int passed = 0;
  int ran = 0;
  for (const auto& c : kCriteria) {
    if (!only.empty() && !only.contains(c.id)) continue;
    const auto start = Clock::now();
    const Outcome o = c.run();
    ++ran;
    passed += o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  " << std::setw(2) << c.id << ' ' << c.name
              << ": " << o.detail << " (" << Fmt(Seconds(start), 1) << " s)" << std::endl;
  }
  std::cout << passed << '/' << ran << " criteria passed" << std::endl;
  return passed == ran ? 0 : 1;
}
