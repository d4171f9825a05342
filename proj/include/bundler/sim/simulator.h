#ifndef BUNDLER_SIM_SIMULATOR_H_
#define BUNDLER_SIM_SIMULATOR_H_

#include <array>
#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "bundler/control/mode_fsm.h"
#include "bundler/sim/scenario.h"
#include "bundler/workload/workload.h"

namespace bundler::sim {

struct QdelaySample {
  TimeSec t = 0;
  std::string queue;  // "sendbox:<site>" or "path<i>"
  double delay = 0;   // seconds
};

struct ModeChange {
  TimeSec t = 0;
  std::string site;
  control::ControllerMode mode = control::ControllerMode::kDelayControl;
};

struct TputSample {
  TimeSec t = 0;  // end of the interval
  std::string site;
  double bps = 0;
};

// A congestion signal next to the ground truth at the moment the
// receivebox produced the ACK behind it.
struct FidelitySample {
  TimeSec t = 0;
  std::string site;
  double est_rtt = 0;
  double true_rtt = 0;
  double est_rate = 0;
  double true_rate = 0;
};

constexpr size_t kNumModes = 3;

struct SiteStats {
  std::string name;
  bool bundler = false;
  uint64_t flows_started = 0;
  uint64_t flows_completed = 0;
  uint64_t offered_bytes = 0;           // payload of all requests issued
  uint64_t delivered_bytes = 0;         // wire bytes delivered after warmup
  double throughput = 0;                // delivered after warmup, bits/sec
  // Per-packet mean waiting times after warmup.
  double mean_sendbox_wait = 0;
  double mean_network_wait = 0;
  uint64_t wait_samples = 0;
  // Sendbox queue delay sampled every qdelay interval, by controller mode.
  std::array<double, kNumModes> mean_sendbox_delay_by_mode{};
  std::array<uint64_t, kNumModes> sendbox_delay_samples_by_mode{};
  // Seconds spent in each mode after warmup.
  std::array<double, kNumModes> mode_time{};
  double reorder_mean = 0;
  double reorder_max = 0;
  uint64_t congestion_acks = 0;
  uint64_t epoch_updates = 0;
  uint64_t sendbox_drops = 0;
  uint64_t retransmissions = 0;
  uint64_t timeouts = 0;
};

struct Conservation {
  uint64_t injected = 0;
  uint64_t delivered = 0;
  uint64_t dropped = 0;
  uint64_t in_flight = 0;  // counted independently, queue by queue
  uint64_t checks = 0;
  uint64_t violations = 0;
};

struct RunResult {
  std::string scenario;
  uint64_t seed = 0;
  TimeSec end_time = 0;
  uint64_t events = 0;
  std::vector<workload::FlowRecord> flows;  // completed finite flows
  std::vector<QdelaySample> qdelay;
  std::vector<ModeChange> modes;
  std::vector<TputSample> tput;
  std::vector<FidelitySample> fidelity;
  std::vector<SiteStats> sites;
  Conservation conservation;
};

// Runs one scenario to its duration (or until all finite work is done when
// no persistent flows exist). Output is a pure function of the scenario.
// Requires Validate(s) to be empty.
RunResult Run(const Scenario& s);

// Completion time of a single `bytes` transfer alone on path 0 without any
// box, using the scenario's reference endpoint.
double UnloadedFct(const Scenario& s, uint64_t bytes, const TcpConfig& tcp = {});

// Slowdown of every flow in `r`, in order, against an unloaded reference
// cache shared across runs of the same topology.
std::vector<double> Slowdowns(const RunResult& r, workload::UnloadedFctCache& cache);

// Trace lines, one record per line:
//   flow,<id>,<site>,<size>,<t_start>,<t_end>,<fct>,<class>,<cross>
//   qdelay,<t>,<queue>,<delay_s>
//   mode,<t>,<site>,<mode>
//   tput,<t>,<site>,<bps>
void WriteTrace(std::ostream& out, const RunResult& r);

}  // namespace bundler::sim

#endif  // BUNDLER_SIM_SIMULATOR_H_
