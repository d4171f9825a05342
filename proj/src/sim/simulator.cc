#include "bundler/sim/simulator.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <memory>
#include <optional>
#include <random>
#include <utility>

#include "bundler/middlebox/receivebox.h"
#include "bundler/middlebox/sendbox.h"
#include "bundler/sim/event_queue.h"
#include "bundler/sim/link.h"

namespace bundler::sim {
namespace {

using control::ControllerMode;

size_t ModeIndex(ControllerMode m) { return static_cast<size_t>(m); }

uint64_t Mix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Wire bytes delivered per site over a trailing window.
class ArrivalWindow {
 public:
  void Add(TimeSec t, uint32_t bytes) {
    samples_.emplace_back(t, bytes);
    total_ += bytes;
  }
  double RateOver(TimeSec now, double window) {
    while (!samples_.empty() && samples_.front().first < now - kKeep) {
      total_ -= samples_.front().second;
      samples_.pop_front();
    }
    if (window <= 0) return 0;
    uint64_t sum = 0;
    for (auto it = samples_.rbegin(); it != samples_.rend() && it->first > now - window; ++it) {
      sum += it->second;
    }
    return 8.0 * static_cast<double>(sum) / window;
  }

 private:
  static constexpr double kKeep = 2.0;
  std::deque<std::pair<TimeSec, uint32_t>> samples_;
  uint64_t total_ = 0;
};

class Simulation {
 public:
  explicit Simulation(const Scenario& s);
  RunResult Run();

 private:
  struct Site {
    SiteSpec spec;
    size_t index = 0;
    std::unique_ptr<Link> access;
    std::unique_ptr<middlebox::Sendbox> sendbox;
    std::optional<TimeSec> wake_at;
    std::optional<workload::RequestSizeDist> dist;
    std::mt19937_64 rng;
    uint64_t seed = 0;
    // Closed loop: requests issued per client. A client's k-th request draws
    // from its own stream, so every variant replays the same requests.
    std::vector<uint32_t> client_requests;
    uint64_t requests_issued = 0;
    bool generating = false;
    ControllerMode last_mode = ControllerMode::kDelayControl;

    // Ground truth at the receivebox.
    ArrivalWindow arrivals;
    double last_true_rtt = 0;

    SiteStats stats;
    uint64_t interval_bytes = 0;
    double sendbox_wait_sum = 0;
    double network_wait_sum = 0;
    uint64_t network_wait_count = 0;
    std::array<double, kNumModes> sendbox_delay_sum{};
    double reorder_sum = 0;
    uint64_t reorder_count = 0;
    std::vector<uint64_t> backlogged;
  };

  struct Flow {
    uint64_t id = 0;
    size_t site = 0;
    FiveTuple tuple;
    uint16_t next_ip_id = 0;
    uint8_t traffic_class = 0;
    uint32_t server = 0;
    std::optional<uint32_t> client;  // closed-loop client thread
    int64_t total = 0;
    uint64_t size = 0;
    bool backlogged = false;
    bool complete = false;
    std::unique_ptr<TcpSender> sender;
    std::unique_ptr<TcpReceiver> receiver;
    workload::FlowRecord rec;
  };

  void StartFlow(Site& site, uint64_t bytes, bool backlogged, std::optional<uint32_t> client = {},
                 std::mt19937_64* draws = nullptr);
  void ScheduleRequest(Site& site, uint32_t client);
  bool MayIssue(const Site& site) const;
  void Transmit(Flow& f, int64_t seq);
  void OnSiteEgress(Site& site, Packet p);
  void Pump(Site& site);
  void CollectSendboxDrops(Site& site);
  void Forward(Packet p);
  void OnNetworkWait(const Packet& p, double wait);
  void OnDelivered(Packet p);
  void OnFeedback(Site& site, std::vector<uint8_t> msg, double true_rtt, double true_rate);
  void Tick(Site& site);
  void ScheduleArrival(Site& site);
  void SampleQueues();
  void SampleThroughput();
  void CheckConservation();
  void FailSendboxes();
  bool WorkRemaining() const;
  double PayloadOf(const Flow& f, int64_t seq) const;

  Scenario sc_;
  EventQueue ev_;
  std::vector<std::unique_ptr<Link>> paths_;
  std::vector<std::unique_ptr<Site>> sites_;
  std::unique_ptr<middlebox::Receivebox> receivebox_;
  std::map<uint32_t, size_t> site_of_bundle_;
  std::vector<std::unique_ptr<Flow>> flows_;
  std::mt19937_64 balance_rng_;
  uint64_t next_uid_ = 0;
  uint64_t active_finite_ = 0;
  int unstarted_explicit_ = 0;
  bool receivebox_failed_ = false;
  bool has_persistent_ = false;
  double reverse_delay_ = 0;
  double forward_delay_ = 0;
  RunResult result_;
};

Simulation::Simulation(const Scenario& s)
    : sc_(s), balance_rng_(s.seed * 0x9E3779B97F4A7C15ULL + 17) {
  reverse_delay_ = sc_.link.ReverseDelay();
  forward_delay_ = sc_.link.paths.front().delay;
  result_.scenario = sc_.name;
  result_.seed = sc_.seed;

  datapath::SchedulerConfig net_queue;
  net_queue.buffer_packets = sc_.link.buffer_packets;
  if (sc_.link.discipline == Discipline::kPerFlowFq) {
    net_queue.kind = datapath::SchedulerKind::kSfq;
    net_queue.exact_flows = true;
  }
  for (size_t i = 0; i < sc_.link.paths.size(); ++i) {
    LinkConfig lc{sc_.link.paths[i].bandwidth, sc_.link.paths[i].delay, net_queue};
    paths_.push_back(std::make_unique<Link>(
        ev_, lc, [this](Packet p) { OnDelivered(std::move(p)); },
        [this](const Packet&) { ++result_.conservation.dropped; },
        [this](const Packet& p, double wait) { OnNetworkWait(p, wait); }));
  }

  std::vector<middlebox::BundleSpec> rb_specs;
  for (size_t i = 0; i < sc_.sites.size(); ++i) {
    auto site = std::make_unique<Site>();
    site->spec = sc_.sites[i];
    site->index = i;
    site->seed = sc_.seed * 1000003ULL + i;
    site->rng.seed(site->seed);
    site->stats.name = site->spec.name;
    site->stats.bundler = site->spec.bundler;
    if (!site->spec.workload.cdf_path.empty()) {
      std::string err;
      site->dist = workload::RequestSizeDist::Load(site->spec.workload.cdf_path, &err);
    }
    if (!site->dist) site->dist = workload::RequestSizeDist::Default();

    datapath::SchedulerConfig access_queue;
    access_queue.buffer_packets = 1'000'000;
    Site* raw = site.get();
    site->access = std::make_unique<Link>(
        ev_, LinkConfig{sc_.link.access_bandwidth, 0.0, access_queue},
        [this, raw](Packet p) { OnSiteEgress(*raw, std::move(p)); },
        [this](const Packet&) { ++result_.conservation.dropped; });

    if (site->spec.bundler) {
      middlebox::BundleSpec spec;
      spec.bundle_id = BundleIdOf(i);
      spec.src = {*middlebox::ParsePrefix(SitePrefix(i))};
      spec.dst = {*middlebox::ParsePrefix(ClientPrefix())};
      spec.scheduler = site->spec.scheduler;
      spec.control = site->spec.control;
      std::string err;
      auto table = middlebox::BundleTable::Create({spec}, &err);
      site->sendbox = std::make_unique<middlebox::Sendbox>(*table, sc_.measurement, 0.0);
      site->last_mode = site->sendbox->bundle(0).controller.mode();
      site_of_bundle_[spec.bundle_id] = i;
      rb_specs.push_back(spec);
    }
    if (site->spec.workload.backlogged_flows > 0) has_persistent_ = true;
    sites_.push_back(std::move(site));
  }
  if (!rb_specs.empty()) {
    std::string err;
    auto table = middlebox::BundleTable::Create(rb_specs, &err);
    receivebox_ = std::make_unique<middlebox::Receivebox>(
        *table, sc_.measurement.initial_sampling_period);
  }
}

bool Simulation::WorkRemaining() const {
  if (has_persistent_ || unstarted_explicit_ > 0) return true;
  for (const auto& s : sites_) {
    if (s->generating) return true;
  }
  return active_finite_ > 0;
}

double Simulation::PayloadOf(const Flow& f, int64_t seq) const {
  if (f.backlogged || seq + 1 < f.total) return kMssBytes;
  return static_cast<double>(f.size - static_cast<uint64_t>(f.total - 1) * kMssBytes);
}

void Simulation::StartFlow(Site& site, uint64_t bytes, bool backlogged,
                           std::optional<uint32_t> client, std::mt19937_64* draws) {
  std::mt19937_64& rng = draws ? *draws : site.rng;
  auto f = std::make_unique<Flow>();
  f->id = flows_.size();
  f->site = site.index;
  const uint32_t server = static_cast<uint32_t>(rng() % site.spec.workload.servers) + 1;
  f->server = server;
  f->client = client;
  f->tuple = {ServerAddr(site.index, server), ClientAddr(f->id), 80, ClientPort(f->id), 6};
  f->next_ip_id = static_cast<uint16_t>(rng());
  f->backlogged = backlogged;
  f->size = bytes;
  f->total = backlogged ? TcpSender::kUnbounded
                        : static_cast<int64_t>(std::max<uint64_t>(1, (bytes + kMssBytes - 1) / kMssBytes));
  if (!backlogged) {
    std::uniform_real_distribution<double> u(0, 1);
    f->traffic_class = u(rng) < site.spec.workload.class0_fraction ? 0 : 1;
    ++active_finite_;
    site.stats.offered_bytes += bytes;
  }
  f->rec.id = f->id;
  f->rec.size = bytes;
  f->rec.t_start = ev_.now();
  f->rec.bundle_id = BundleIdOf(site.index);
  f->rec.traffic_class = f->traffic_class;
  f->rec.cross_traffic = site.spec.cross_traffic;
  f->receiver = std::make_unique<TcpReceiver>(f->total);
  Flow* raw = f.get();
  f->sender = std::make_unique<TcpSender>(ev_, site.spec.tcp, f->total,
                                          [this, raw](int64_t seq, bool) { Transmit(*raw, seq); });
  ++site.stats.flows_started;
  if (backlogged) site.backlogged.push_back(f->id);
  flows_.push_back(std::move(f));
  raw->sender->Start();
}

void Simulation::Transmit(Flow& f, int64_t seq) {
  Packet p;
  p.tuple = f.tuple;
  p.ip_id = f.next_ip_id++;
  p.size = static_cast<uint32_t>(PayloadOf(f, seq)) + kHeaderBytes;
  p.uid = next_uid_++;
  p.flow_id = f.id;
  p.seq = seq;
  p.traffic_class = f.traffic_class;
  ++result_.conservation.injected;
  sites_[f.site]->access->Send(p);
}

void Simulation::OnSiteEgress(Site& site, Packet p) {
  if (!site.sendbox) {
    Forward(std::move(p));
    return;
  }
  switch (site.sendbox->OnPacket(p, ev_.now())) {
    case middlebox::Sendbox::Verdict::kBypass:
      Forward(std::move(p));
      return;
    case middlebox::Sendbox::Verdict::kQueued:
    case middlebox::Sendbox::Verdict::kDropped:
      CollectSendboxDrops(site);
      Pump(site);
      return;
  }
}

void Simulation::CollectSendboxDrops(Site& site) {
  const auto drops = site.sendbox->bundle(0).datapath.TakeDrops();
  result_.conservation.dropped += drops.size();
  site.stats.sendbox_drops += drops.size();
}

void Simulation::Pump(Site& site) {
  if (site.sendbox->failed()) return;
  const TimeSec now = ev_.now();
  while (auto p = site.sendbox->Dequeue(0, now)) {
    if (now >= sc_.warmup) site.sendbox_wait_sum += now - p->enqueue_time;
    p->sendbox_departure = now;
    Forward(std::move(*p));
  }
  CollectSendboxDrops(site);
  const auto next = site.sendbox->NextEligibleTime(0, now);
  CollectSendboxDrops(site);
  if (next && (!site.wake_at || *next < *site.wake_at)) {
    site.wake_at = *next;
    Site* raw = &site;
    ev_.Schedule(*next, [this, raw] {
      if (raw->wake_at && *raw->wake_at <= ev_.now()) {
        raw->wake_at.reset();
        Pump(*raw);
      }
    });
  }
}

void Simulation::Forward(Packet p) {
  size_t path = 0;
  const size_t n = paths_.size();
  if (n > 1) {
    if (sc_.link.balancer == Balancer::kPerFlowHash) {
      path = static_cast<size_t>(HashFiveTuple(p.tuple) % n);
    } else {
      path = std::uniform_int_distribution<size_t>(0, n - 1)(balance_rng_);
    }
  }
  p.bottleneck_arrival = ev_.now();
  paths_[path]->Send(p);
}

void Simulation::OnNetworkWait(const Packet& p, double wait) {
  if (ev_.now() < sc_.warmup) return;
  Site& site = *sites_[flows_[p.flow_id]->site];
  site.network_wait_sum += wait;
  ++site.network_wait_count;
}

void Simulation::OnDelivered(Packet p) {
  const TimeSec now = ev_.now();
  ++result_.conservation.delivered;
  Flow& f = *flows_[p.flow_id];
  Site& site = *sites_[f.site];
  site.interval_bytes += p.size;
  if (now >= sc_.warmup) site.stats.delivered_bytes += p.size;

  if (site.sendbox && p.sendbox_departure >= 0) {
    site.arrivals.Add(now, p.size);
    site.last_true_rtt = now - p.sendbox_departure + reverse_delay_;
  }
  if (receivebox_ && !receivebox_failed_) {
    if (auto ack = receivebox_->OnPacket(p, now)) {
      const auto idx = receivebox_->table().Match(p.tuple);
      const auto it = site_of_bundle_.find(receivebox_->table().specs()[*idx].bundle_id);
      Site& owner = *sites_[it->second];
      const auto min_rtt = owner.sendbox->bundle(0).measurement.min_rtt();
      const double true_rate = min_rtt ? owner.arrivals.RateOver(now, *min_rtt) : 0.0;
      const double true_rtt = owner.last_true_rtt;
      Site* raw = &owner;
      ev_.ScheduleIn(reverse_delay_, [this, raw, msg = std::move(*ack), true_rtt, true_rate] {
        OnFeedback(*raw, msg, true_rtt, true_rate);
      });
    }
  }

  const int64_t cum = f.receiver->OnSegment(p.seq);
  if (!f.backlogged && !f.complete && f.receiver->complete()) {
    f.complete = true;
    f.rec.t_end = now;
    --active_finite_;
    ++site.stats.flows_completed;
    result_.flows.push_back(f.rec);
    if (f.client) ScheduleRequest(site, *f.client);
  }
  Flow* raw = &f;
  ev_.ScheduleIn(reverse_delay_, [raw, cum, seq = p.seq] { raw->sender->OnAck(cum, seq); });
}

void Simulation::OnFeedback(Site& site, std::vector<uint8_t> msg, double true_rtt,
                            double true_rate) {
  auto& b = site.sendbox->bundle(0);
  const uint64_t before = b.measurement.diagnostics().signals_emitted;
  site.sendbox->OnFeedback(msg, ev_.now());
  ++site.stats.congestion_acks;
  if (b.measurement.diagnostics().signals_emitted == before) return;
  const auto& sig = *b.measurement.last_signals();
  if (ev_.now() >= sc_.warmup && sig.has_rates) {
    result_.fidelity.push_back(
        {ev_.now(), site.spec.name, sig.rtt, true_rtt, sig.recv_rate, true_rate});
  }
}

void Simulation::Tick(Site& site) {
  if (site.sendbox->failed()) return;
  const TimeSec now = ev_.now();
  for (auto& msg : site.sendbox->Tick(now)) {
    ++site.stats.epoch_updates;
    ev_.ScheduleIn(forward_delay_, [this, msg = std::move(msg)] {
      if (!receivebox_failed_) receivebox_->OnFeedback(msg);
    });
  }
  auto& b = site.sendbox->bundle(0);
  const ControllerMode mode = b.controller.mode();
  if (mode != site.last_mode) {
    result_.modes.push_back({now, site.spec.name, mode});
    site.last_mode = mode;
  }
  if (now >= sc_.warmup) {
    site.stats.mode_time[ModeIndex(mode)] += site.spec.control.tick;
    const auto& tracker = b.measurement.reordering();
    if (tracker.in_order_count() + tracker.out_of_order_count() >= 20) {
      const double frac = tracker.Fraction();
      site.reorder_sum += frac;
      ++site.reorder_count;
      site.stats.reorder_max = std::max(site.stats.reorder_max, frac);
    }
  }
  Pump(site);
  Site* raw = &site;
  ev_.ScheduleIn(site.spec.control.tick, [this, raw] { Tick(*raw); });
}

bool Simulation::MayIssue(const Site& site) const {
  const auto& w = site.spec.workload;
  return ev_.now() < w.stop && (w.num_requests == 0 || site.requests_issued < w.num_requests);
}

void Simulation::ScheduleArrival(Site& site) {
  const auto& w = site.spec.workload;
  const double lambda = w.load_bps / (8.0 * site.dist->Mean());
  const double gap = std::exponential_distribution<double>(lambda)(site.rng);
  Site* raw = &site;
  ev_.ScheduleIn(gap, [this, raw] {
    if (!MayIssue(*raw)) {
      raw->generating = false;
      return;
    }
    ++raw->requests_issued;
    StartFlow(*raw, raw->dist->Sample(raw->rng), false);
    ScheduleArrival(*raw);
  });
}

void Simulation::ScheduleRequest(Site& site, uint32_t client) {
  const uint32_t k = site.client_requests[client]++;
  std::mt19937_64 r(Mix64(site.seed ^ Mix64((uint64_t{client} << 32) | k)));
  const double think = site.spec.workload.think_time;
  const double gap = think > 0 ? std::exponential_distribution<double>(1.0 / think)(r) : 0.0;
  const uint64_t bytes = site.dist->Sample(r);
  const uint64_t flow_seed = r();
  Site* raw = &site;
  ev_.ScheduleIn(gap, [this, raw, client, bytes, flow_seed] {
    if (!MayIssue(*raw)) {
      raw->generating = false;
      return;
    }
    ++raw->requests_issued;
    std::mt19937_64 draws(flow_seed);
    StartFlow(*raw, bytes, false, client, &draws);
  });
}

void Simulation::SampleQueues() {
  const TimeSec now = ev_.now();
  for (auto& s : sites_) {
    if (!s->sendbox || s->sendbox->failed()) continue;
    auto& b = s->sendbox->bundle(0);
    const double d = b.datapath.QueueDelay(now);
    result_.qdelay.push_back({now, "sendbox:" + s->spec.name, d});
    if (now >= sc_.warmup) {
      const size_t m = ModeIndex(b.controller.mode());
      s->sendbox_delay_sum[m] += d;
      ++s->stats.sendbox_delay_samples_by_mode[m];
    }
  }
  for (size_t i = 0; i < paths_.size(); ++i) {
    result_.qdelay.push_back({now, "path" + std::to_string(i), paths_[i]->BacklogDelay()});
  }
  CheckConservation();
  ev_.ScheduleIn(sc_.qdelay_interval, [this] { SampleQueues(); });
}

void Simulation::SampleThroughput() {
  for (auto& s : sites_) {
    result_.tput.push_back(
        {ev_.now(), s->spec.name, 8.0 * static_cast<double>(s->interval_bytes) / sc_.tput_interval});
    s->interval_bytes = 0;
  }
  ev_.ScheduleIn(sc_.tput_interval, [this] { SampleThroughput(); });
}

void Simulation::CheckConservation() {
  uint64_t in_flight = 0;
  for (const auto& p : paths_) in_flight += p->queued() + p->in_transit();
  for (const auto& s : sites_) {
    in_flight += s->access->queued() + s->access->in_transit();
    if (s->sendbox) in_flight += s->sendbox->bundle(0).datapath.packets();
  }
  auto& c = result_.conservation;
  c.in_flight = in_flight;
  ++c.checks;
  if (c.injected != c.delivered + c.dropped + in_flight) ++c.violations;
}

void Simulation::FailSendboxes() {
  for (auto& s : sites_) {
    if (!s->sendbox) continue;
    const auto lost = s->sendbox->Fail(ev_.now());
    result_.conservation.dropped += lost.size();
    s->stats.sendbox_drops += lost.size();
    CollectSendboxDrops(*s);
  }
}

RunResult Simulation::Run() {
  for (auto& sp : sites_) {
    Site& site = *sp;
    const auto& w = site.spec.workload;
    Site* raw = &site;
    if (site.sendbox) {
      result_.modes.push_back({0.0, site.spec.name, site.last_mode});
      ev_.Schedule(site.spec.control.tick, [this, raw] { Tick(*raw); });
    }
    if (w.arrivals == Arrivals::kPoisson && w.load_bps > 0 && w.start < sc_.duration) {
      site.generating = true;
      ev_.Schedule(w.start, [this, raw] { ScheduleArrival(*raw); });
    }
    if (w.arrivals == Arrivals::kClosedLoop && w.start < sc_.duration) {
      site.generating = true;
      site.client_requests.assign(w.clients, 0);
      ev_.Schedule(w.start, [this, raw] {
        for (uint32_t k = 0; k < raw->spec.workload.clients; ++k) ScheduleRequest(*raw, k);
      });
    }
    if (!w.explicit_flows.empty()) {
      ++unstarted_explicit_;
      ev_.Schedule(w.start, [this, raw] {
        --unstarted_explicit_;
        for (uint64_t bytes : raw->spec.workload.explicit_flows) StartFlow(*raw, bytes, false);
      });
    }
    for (uint32_t k = 0; k < w.backlogged_flows; ++k) {
      // Staggered by a millisecond so the flows do not start in lockstep.
      ev_.Schedule(w.start + 1e-3 * k, [this, raw] { StartFlow(*raw, 0, true); });
    }
    if (w.backlogged_flows > 0 && std::isfinite(w.stop)) {
      ev_.Schedule(w.stop, [this, raw] {
        for (uint64_t id : raw->backlogged) flows_[id]->sender->StopNewData();
      });
    }
  }
  if (std::isfinite(sc_.fault.sendbox_fail_at)) {
    ev_.Schedule(sc_.fault.sendbox_fail_at, [this] { FailSendboxes(); });
  }
  if (std::isfinite(sc_.fault.receivebox_fail_at)) {
    ev_.Schedule(sc_.fault.receivebox_fail_at, [this] { receivebox_failed_ = true; });
  }
  ev_.Schedule(sc_.qdelay_interval, [this] { SampleQueues(); });
  ev_.Schedule(sc_.tput_interval, [this] { SampleThroughput(); });

  ev_.RunWhile(sc_.duration, [this] { return WorkRemaining(); });

  CheckConservation();
  result_.end_time = ev_.now();
  result_.events = ev_.executed();
  const double measured = std::max(result_.end_time - sc_.warmup, 1e-9);
  for (auto& sp : sites_) {
    Site& s = *sp;
    SiteStats& st = s.stats;
    st.throughput = 8.0 * static_cast<double>(st.delivered_bytes) / measured;
    if (s.network_wait_count > 0) {
      st.wait_samples = s.network_wait_count;
      st.mean_network_wait = s.network_wait_sum / static_cast<double>(s.network_wait_count);
      st.mean_sendbox_wait = s.sendbox_wait_sum / static_cast<double>(s.network_wait_count);
    }
    for (size_t m = 0; m < kNumModes; ++m) {
      if (st.sendbox_delay_samples_by_mode[m] > 0) {
        st.mean_sendbox_delay_by_mode[m] =
            s.sendbox_delay_sum[m] / static_cast<double>(st.sendbox_delay_samples_by_mode[m]);
      }
    }
    if (s.reorder_count > 0) st.reorder_mean = s.reorder_sum / static_cast<double>(s.reorder_count);
    for (const auto& f : flows_) {
      if (f->site != s.index) continue;
      st.retransmissions += f->sender->retransmissions();
      st.timeouts += f->sender->timeouts();
    }
    result_.sites.push_back(st);
  }
  return std::move(result_);
}

}  // namespace

RunResult Run(const Scenario& s) { return Simulation(s).Run(); }

double UnloadedFct(const Scenario& s, uint64_t bytes, const TcpConfig& tcp) {
  Scenario alone;
  alone.name = "unloaded";
  alone.seed = 1;
  alone.warmup = 0;
  alone.duration = 3600;
  alone.qdelay_interval = 3600;
  alone.tput_interval = 3600;
  alone.link = s.link;
  alone.link.paths = {s.link.paths.front()};
  alone.link.reverse_delay = s.link.ReverseDelay();
  alone.link.discipline = Discipline::kDropTailFifo;
  SiteSpec site;
  site.name = "alone";
  site.tcp = tcp;
  site.workload.explicit_flows = {bytes};
  alone.sites = {site};
  const RunResult r = Run(alone);
  return r.flows.empty() ? 0.0 : r.flows.front().fct();
}

std::vector<double> Slowdowns(const RunResult& r, workload::UnloadedFctCache& cache) {
  std::vector<double> out;
  out.reserve(r.flows.size());
  for (const auto& f : r.flows) out.push_back(workload::Slowdown(f, cache.Get(f.size)));
  return out;
}

void WriteTrace(std::ostream& out, const RunResult& r) {
  std::map<uint32_t, std::string> site_name;
  for (size_t i = 0; i < r.sites.size(); ++i) site_name[BundleIdOf(i)] = r.sites[i].name;
  for (const auto& f : r.flows) {
    out << "flow," << f.id << ',' << site_name[f.bundle_id] << ',' << f.size << ',' << f.t_start
        << ',' << f.t_end << ',' << f.fct() << ',' << int{f.traffic_class} << ','
        << (f.cross_traffic ? 1 : 0) << '\n';
  }
  for (const auto& q : r.qdelay) out << "qdelay," << q.t << ',' << q.queue << ',' << q.delay << '\n';
  for (const auto& m : r.modes) {
    out << "mode," << m.t << ',' << m.site << ',' << control::ToString(m.mode) << '\n';
  }
  for (const auto& t : r.tput) out << "tput," << t.t << ',' << t.site << ',' << t.bps << '\n';
}

}  // namespace bundler::sim
