#include "bundler/sim/scenario.h"

#include <cmath>
#include <set>

namespace bundler::sim {

std::string_view ToString(Discipline d) {
  switch (d) {
    case Discipline::kDropTailFifo:
      return "droptail";
    case Discipline::kPerFlowFq:
      return "fq";
  }
  return "?";
}

std::optional<Discipline> ParseDiscipline(std::string_view s) {
  for (auto d : {Discipline::kDropTailFifo, Discipline::kPerFlowFq}) {
    if (ToString(d) == s) return d;
  }
  return std::nullopt;
}

std::string_view ToString(Balancer b) {
  switch (b) {
    case Balancer::kPerFlowHash:
      return "flow_hash";
    case Balancer::kPerPacketRandom:
      return "packet_random";
  }
  return "?";
}

std::optional<Balancer> ParseBalancer(std::string_view s) {
  for (auto b : {Balancer::kPerFlowHash, Balancer::kPerPacketRandom}) {
    if (ToString(b) == s) return b;
  }
  return std::nullopt;
}

std::string_view ToString(Arrivals a) {
  switch (a) {
    case Arrivals::kPoisson:
      return "poisson";
    case Arrivals::kClosedLoop:
      return "closed";
  }
  return "?";
}

std::optional<Arrivals> ParseArrivals(std::string_view s) {
  for (auto a : {Arrivals::kPoisson, Arrivals::kClosedLoop}) {
    if (ToString(a) == s) return a;
  }
  return std::nullopt;
}

double LinkSpec::capacity() const {
  double c = 0;
  for (const auto& p : paths) c += p.bandwidth;
  return c;
}

std::vector<ValidationError> Validate(const Scenario& s) {
  std::vector<ValidationError> errs;
  auto bad = [&](std::string field, std::string msg) {
    errs.push_back({std::move(field), std::move(msg)});
  };
  auto finite_pos = [](double v) { return std::isfinite(v) && v > 0; };

  if (!finite_pos(s.duration)) bad("duration", "must be positive and finite");
  if (!(s.warmup >= 0) || (std::isfinite(s.duration) && s.warmup >= s.duration)) {
    bad("warmup", "must be in [0, duration)");
  }
  if (!finite_pos(s.qdelay_interval)) bad("qdelay_interval", "must be positive");
  if (!finite_pos(s.tput_interval)) bad("tput_interval", "must be positive");
  if (s.link.paths.empty()) bad("link.paths", "at least one path is required");
  for (size_t i = 0; i < s.link.paths.size(); ++i) {
    const auto& p = s.link.paths[i];
    const std::string f = "link.path" + std::to_string(i);
    if (!finite_pos(p.bandwidth)) bad(f + ".bandwidth", "must be positive");
    if (!(p.delay >= 0) || !std::isfinite(p.delay)) bad(f + ".delay", "must be >= 0");
  }
  if (s.link.buffer_packets == 0) bad("link.buffer", "must be at least 1 packet");
  if (!finite_pos(s.link.access_bandwidth)) bad("link.access_bandwidth", "must be positive");
  if (!std::isfinite(s.link.reverse_delay)) bad("link.reverse_delay", "must be finite");
  if (s.measurement.initial_sampling_period == 0) {
    bad("measurement.initial_sampling_period", "must be at least 1");
  }

  if (s.sites.empty()) bad("sites", "at least one site is required");
  if (s.sites.size() > 100) bad("sites", "at most 100 sites");
  std::set<std::string> names;
  for (size_t i = 0; i < s.sites.size(); ++i) {
    const auto& site = s.sites[i];
    const std::string f = "site." + (site.name.empty() ? std::to_string(i) : site.name);
    if (site.name.empty()) bad(f + ".name", "must not be empty");
    if (!names.insert(site.name).second) bad(f + ".name", "duplicate site name");
    const auto& w = site.workload;
    if (!(w.load_bps >= 0) || !std::isfinite(w.load_bps)) bad(f + ".load", "must be >= 0");
    if (w.servers == 0 || w.servers > 65535) bad(f + ".servers", "must be in [1, 65535]");
    if (w.clients == 0 || w.clients > 1000000) bad(f + ".clients", "must be in [1, 1000000]");
    if (!(w.class0_fraction >= 0 && w.class0_fraction <= 1)) {
      bad(f + ".class0_fraction", "must be in [0, 1]");
    }
    if (!(w.start >= 0) || !(w.stop > w.start)) bad(f + ".start", "need 0 <= start < stop");
    if (w.arrivals == Arrivals::kPoisson && w.load_bps == 0 && w.num_requests > 0) {
      bad(f + ".requests", "poisson requests need a load");
    }
    if (!(w.think_time >= 0) || !std::isfinite(w.think_time)) {
      bad(f + ".think_time", "must be >= 0");
    }
    if (!finite_pos(site.tcp.initial_window)) bad(f + ".tcp.initial_window", "must be positive");
    if (site.tcp.algorithm == TcpAlgorithm::kFixedWindow && !(site.tcp.fixed_window >= 1)) {
      bad(f + ".tcp.fixed_window", "must be at least 1");
    }
    if (site.bundler) {
      if (site.scheduler.buffer_packets == 0) bad(f + ".sendbox_buffer", "must be at least 1");
      if (site.scheduler.num_buckets == 0) bad(f + ".buckets", "must be at least 1");
      if (site.scheduler.quantum == 0) bad(f + ".quantum", "must be at least 1");
      if (!finite_pos(site.control.initial_rate)) bad(f + ".initial_rate", "must be positive");
      if (!finite_pos(site.control.tick)) bad(f + ".tick", "must be positive");
      if (!finite_pos(site.control.pulse_period)) bad(f + ".pulse_period", "must be positive");
    }
  }
  return errs;
}

uint32_t ServerAddr(size_t site, uint32_t server) {
  return Ipv4(10, static_cast<uint8_t>(10 + site), static_cast<uint8_t>(server >> 8),
              static_cast<uint8_t>(server & 0xff));
}

uint32_t ClientAddr(uint64_t flow_id) {
  return Ipv4(10, 200, static_cast<uint8_t>(flow_id >> 8), static_cast<uint8_t>(flow_id));
}

uint16_t ClientPort(uint64_t flow_id) {
  return static_cast<uint16_t>(1024 + (flow_id >> 16) % 64000);
}

std::string SitePrefix(size_t site) { return "10." + std::to_string(10 + site) + ".0.0/16"; }

std::string ClientPrefix() { return "10.200.0.0/16"; }

uint32_t BundleIdOf(size_t site) { return static_cast<uint32_t>(site + 1); }

}  // namespace bundler::sim
