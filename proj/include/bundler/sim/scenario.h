#ifndef BUNDLER_SIM_SCENARIO_H_
#define BUNDLER_SIM_SCENARIO_H_

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bundler/control/rate_controller.h"
#include "bundler/datapath/scheduler.h"
#include "bundler/measurement/epoch_measurement.h"
#include "bundler/sim/tcp.h"
#include "bundler/workload/workload.h"

namespace bundler::sim {

constexpr double kForever = std::numeric_limits<double>::infinity();

enum class Discipline { kDropTailFifo, kPerFlowFq };
enum class Balancer { kPerFlowHash, kPerPacketRandom };

std::string_view ToString(Discipline d);
std::optional<Discipline> ParseDiscipline(std::string_view s);
std::string_view ToString(Balancer b);
std::optional<Balancer> ParseBalancer(std::string_view s);

struct PathSpec {
  double bandwidth = 96e6;  // bits/sec
  double delay = 0.025;     // one-way propagation, seconds
};

// The shared network between the sending sites and the receiving site.
// One path reduces exactly to a single link.
struct LinkSpec {
  std::vector<PathSpec> paths = {PathSpec{}};
  uint32_t buffer_packets = 800;  // per path
  Discipline discipline = Discipline::kDropTailFifo;
  Balancer balancer = Balancer::kPerFlowHash;
  double reverse_delay = -1;      // ACK and feedback return delay; <0 means path 0's delay
  double access_bandwidth = 1e9;  // each site's uplink

  double capacity() const;
  double ReverseDelay() const { return reverse_delay >= 0 ? reverse_delay : paths.front().delay; }
};

enum class Arrivals { kPoisson, kClosedLoop };

std::string_view ToString(Arrivals a);
std::optional<Arrivals> ParseArrivals(std::string_view s);

// Request traffic originating at a site, plus persistent backlogged flows.
// Every request is served by a uniformly chosen one of `servers` hosts.
// Poisson: requests arrive at `load_bps` offered load. Closed loop: each of
// `clients` client threads has at most one outstanding request and issues
// the next one an exponential think time after the previous completes.
struct WorkloadSpec {
  Arrivals arrivals = Arrivals::kPoisson;
  double load_bps = 0;
  double think_time = 11.3;  // closed loop: mean seconds from a completion to the next request
  uint64_t num_requests = 0;  // 0 means unbounded until `stop`
  uint32_t servers = 200;
  uint32_t clients = 20000;  // closed loop only
  double class0_fraction = 1.0;  // share of requests tagged traffic class 0
  uint32_t backlogged_flows = 0;
  std::vector<uint64_t> explicit_flows;  // payload sizes, all started at `start`
  TimeSec start = 0;
  TimeSec stop = kForever;
  std::string cdf_path;  // empty: built-in distribution
};

struct SiteSpec {
  std::string name;
  bool bundler = false;
  bool cross_traffic = false;
  datapath::SchedulerConfig scheduler;
  control::RateControlConfig control;
  TcpConfig tcp;
  WorkloadSpec workload;
};

struct FaultSpec {
  TimeSec sendbox_fail_at = kForever;     // every sendbox fails open
  TimeSec receivebox_fail_at = kForever;
};

struct Scenario {
  std::string name = "custom";
  uint64_t seed = 1;
  TimeSec duration = 60;
  TimeSec warmup = 5;
  TimeSec qdelay_interval = 0.1;
  TimeSec tput_interval = 1.0;
  LinkSpec link;
  std::vector<SiteSpec> sites;
  measurement::MeasurementConfig measurement;
  FaultSpec fault;
};

struct ValidationError {
  std::string field;
  std::string message;
};

// Empty when the scenario can run.
std::vector<ValidationError> Validate(const Scenario& s);

// Address plan. Site s's servers live in 10.(10+s).0.0/16 and every client
// in 10.200.0.0/16, so each site's traffic is a distinct bundle.
uint32_t ServerAddr(size_t site, uint32_t server);
uint32_t ClientAddr(uint64_t flow_id);
uint16_t ClientPort(uint64_t flow_id);
std::string SitePrefix(size_t site);
std::string ClientPrefix();
uint32_t BundleIdOf(size_t site);

}  // namespace bundler::sim

#endif  // BUNDLER_SIM_SCENARIO_H_
