#include "bundler/cli/presets.h"

#include <algorithm>

namespace bundler::cli {
namespace {

constexpr std::string_view kFig2 = R"(# One backlogged Cubic flow; where does its queue build?
[scenario]
name = fig2-queueshift
duration = 30
warmup = 5
seeds = 1

[link]
paths = 96M@25ms
buffer = 800

[site a]
backlogged = 1
scheduler = sfq

[variant statusquo]
site.a.bundler = false

[variant bundler]
site.a.bundler = true
)";

// Shared by the web-workload presets: 96 Mbps, 50 ms round trip, 2 BDP of
// buffer, 20000 closed-loop client threads over 200 servers. With the
// shipped size distribution (mean 6004 B) an 11.3 s think time offers about
// 84 Mbps; heavy-tailed samples of 100k requests usually measure less.
constexpr std::string_view kFig6 = R"(# Web requests at 84 Mbps offered load; slowdown by scheduling policy.
[scenario]
name = fig6-fct
duration = 600
warmup = 5
seeds = 1,2,3
baseline = statusquo

[link]
paths = 96M@25ms
buffer = 800

[site web]
arrivals = closed
servers = 200
clients = 20000
think_time = 11.3
requests = 100000

[variant statusquo]
site.web.bundler = false

[variant innetwork]
site.web.bundler = false
link.discipline = fq

[variant bundler_fifo]
site.web.bundler = true
site.web.scheduler = fifo

[variant bundler_sfq]
site.web.bundler = true
site.web.scheduler = sfq

# Two equally sized classes; class 0 is served first.
[variant bundler_prio]
site.web.bundler = true
site.web.scheduler = prio
site.web.class0_fraction = 0.5

[variant bundler_fqcodel]
site.web.bundler = true
site.web.scheduler = fq_codel
)";

// The bundle's think time offers about 72 Mbps so that, with the 12 Mbps of
// short cross flows, the last phase carries the same 84 Mbps as fig6.
constexpr std::string_view kFig7 = R"(# Three phases: no cross traffic, a buffer-filling flow from 60 s,
# web-like short flows from 120 s.
[scenario]
name = fig7-crosstraffic
duration = 180
warmup = 5
seeds = 1
baseline = statusquo
qdelay_interval = 0.1

[link]
paths = 96M@25ms
buffer = 800

[site bundle]
arrivals = closed
servers = 200
clients = 20000
think_time = 13.2
scheduler = sfq

[site elastic]
cross = true
backlogged = 1
start = 60
stop = 120

[site short]
cross = true
arrivals = poisson
load = 12M
start = 120

[variant statusquo]
site.bundle.bundler = false

[variant bundler]
site.bundle.bundler = true
)";

constexpr std::string_view kFig9Short = R"(# The bundle offers 48 Mbps of web requests against growing short-flow
# cross traffic.
[scenario]
name = fig9-shortflows
duration = 60
warmup = 5
seeds = 1
baseline = statusquo_12M

[link]
paths = 96M@25ms
buffer = 800

[site bundle]
arrivals = poisson
load = 48M
scheduler = sfq

[site cross]
cross = true
arrivals = poisson

[variant statusquo_12M]
site.bundle.bundler = false
site.cross.load = 12M

[variant bundler_12M]
site.bundle.bundler = true
site.cross.load = 12M

[variant statusquo_24M]
site.bundle.bundler = false
site.cross.load = 24M

[variant bundler_24M]
site.bundle.bundler = true
site.cross.load = 24M

[variant statusquo_36M]
site.bundle.bundler = false
site.cross.load = 36M

[variant bundler_36M]
site.bundle.bundler = true
site.cross.load = 36M
)";

constexpr std::string_view kFig9Buffer = R"(# 20 backlogged flows in the bundle against k backlogged cross flows.
[scenario]
name = fig9-bufferfilling
duration = 60
warmup = 10
seeds = 1
baseline = statusquo_10

[link]
paths = 96M@25ms
buffer = 800

[site bundle]
backlogged = 20
scheduler = sfq

[site cross]
cross = true

[variant statusquo_10]
site.bundle.bundler = false
site.cross.backlogged = 10

[variant bundler_10]
site.bundle.bundler = true
site.cross.backlogged = 10

[variant statusquo_30]
site.bundle.bundler = false
site.cross.backlogged = 30

[variant bundler_30]
site.bundle.bundler = true
site.cross.backlogged = 30

[variant statusquo_50]
site.bundle.bundler = false
site.cross.backlogged = 50

[variant bundler_50]
site.bundle.bundler = true
site.cross.backlogged = 50
)";

constexpr std::string_view kFig10 = R"(# Two bundles share the bottleneck; each carries web requests and one
# backlogged Cubic flow. Aggregate web load is 84 Mbps, split 1:1 or 2:1.
[scenario]
name = fig10-twobundles
duration = 60
warmup = 5
seeds = 1
baseline = statusquo_1to1

[link]
paths = 96M@25ms
buffer = 800

[site a]
arrivals = poisson
backlogged = 1
scheduler = sfq

[site b]
arrivals = poisson
backlogged = 1
scheduler = sfq

[variant statusquo_1to1]
site.a.load = 42M
site.b.load = 42M

[variant bundler_1to1]
site.a.load = 42M
site.b.load = 42M
site.a.bundler = true
site.b.bundler = true

[variant statusquo_2to1]
site.a.load = 56M
site.b.load = 28M

[variant bundler_2to1]
site.a.load = 56M
site.b.load = 28M
site.a.bundler = true
site.b.bundler = true
)";

constexpr std::string_view kFig8 = R"(# The fig6 workload under different sendbox and endhost algorithms.
[scenario]
name = fig8-cc-variants
duration = 600
warmup = 5
seeds = 1
baseline = statusquo_cubic

[link]
paths = 96M@25ms
buffer = 800

[site web]
arrivals = closed
servers = 200
clients = 20000
think_time = 11.3
requests = 100000
scheduler = sfq

[variant statusquo_cubic]
site.web.bundler = false

[variant copa_cubic]
site.web.bundler = true
site.web.control.variant = copa

[variant basic_delay_cubic]
site.web.bundler = true
site.web.control.variant = basic_delay

[variant statusquo_reno]
site.web.bundler = false
site.web.tcp = reno

[variant copa_reno]
site.web.bundler = true
site.web.tcp = reno
site.web.control.variant = copa
)";

constexpr std::string_view kProxy = R"(# Endpoints that skip slow start, as if a proxy terminated connections
# at the sendbox: every flow sends a fixed window of 450 segments.
[scenario]
name = proxy-idealized
duration = 600
warmup = 5
seeds = 1
baseline = bundler_cubic

[link]
paths = 96M@25ms
buffer = 800

[site web]
arrivals = closed
servers = 200
clients = 20000
think_time = 11.3
requests = 100000
bundler = true
scheduler = sfq

[variant bundler_cubic]
site.web.tcp = cubic

[variant bundler_proxy]
site.web.tcp = fixed
site.web.fixed_window = 450
site.web.sendbox_buffer = 20000
)";

constexpr std::string_view kMultipath = R"(# One bundle over 1, 2, 4 or 8 paths with unequal delays, hashed per flow.
# Each path carries an equal share of the bandwidth.
[scenario]
name = multipath-sweep
duration = 30
warmup = 5
seeds = 1

[link]
buffer = 800
balancer = flow_hash

[site a]
bundler = true
backlogged = 16
scheduler = sfq

[variant p1_24M_20ms]
link.paths = 24M@20ms
[variant p2_24M_20ms]
link.paths = 12M@20ms, 12M@30ms
[variant p4_24M_20ms]
link.paths = 6M@20ms, 6M@25ms, 6M@30ms, 6M@35ms
[variant p8_24M_20ms]
link.paths = 3M@20ms, 3M@22.5ms, 3M@25ms, 3M@27.5ms, 3M@30ms, 3M@32.5ms, 3M@35ms, 3M@37.5ms
[variant p1_24M_100ms]
link.paths = 24M@100ms
[variant p2_24M_100ms]
link.paths = 12M@100ms, 12M@150ms
[variant p4_24M_100ms]
link.paths = 6M@100ms, 6M@125ms, 6M@150ms, 6M@175ms
[variant p8_24M_100ms]
link.paths = 3M@100ms, 3M@112.5ms, 3M@125ms, 3M@137.5ms, 3M@150ms, 3M@162.5ms, 3M@175ms, 3M@187.5ms
[variant p1_96M_20ms]
link.paths = 96M@20ms
[variant p2_96M_20ms]
link.paths = 48M@20ms, 48M@30ms
[variant p4_96M_20ms]
link.paths = 24M@20ms, 24M@25ms, 24M@30ms, 24M@35ms
[variant p8_96M_20ms]
link.paths = 12M@20ms, 12M@22.5ms, 12M@25ms, 12M@27.5ms, 12M@30ms, 12M@32.5ms, 12M@35ms, 12M@37.5ms
[variant p1_96M_100ms]
link.paths = 96M@100ms
[variant p2_96M_100ms]
link.paths = 48M@100ms, 48M@150ms
[variant p4_96M_100ms]
link.paths = 24M@100ms, 24M@125ms, 24M@150ms, 24M@175ms
[variant p8_96M_100ms]
link.paths = 12M@100ms, 12M@112.5ms, 12M@125ms, 12M@137.5ms, 12M@150ms, 12M@162.5ms, 12M@175ms, 12M@187.5ms
)";

}  // namespace

const std::vector<Preset>& Presets() {
  static const std::vector<Preset> presets = {
      {"fig2-queueshift", "single backlogged flow; queue moves to the sendbox", kFig2},
      {"fig6-fct", "web slowdown: StatusQuo, In-Network FQ, Bundler with several schedulers",
       kFig6},
      {"fig7-crosstraffic", "three-phase cross traffic; mode timeline and fairness", kFig7},
      {"fig9-shortflows", "bundle against growing short-flow cross traffic", kFig9Short},
      {"fig9-bufferfilling", "20 backlogged bundle flows against k backlogged cross flows",
       kFig9Buffer},
      {"fig10-twobundles", "two bundles with 1:1 and 2:1 load splits", kFig10},
      {"fig8-cc-variants", "sendbox and endhost congestion control variants", kFig8},
      {"proxy-idealized", "fixed-window endpoints behind the sendbox", kProxy},
      {"multipath-sweep", "reordering heuristic over 1-8 imbalanced paths", kMultipath},
  };
  return presets;
}

const Preset* FindPreset(std::string_view name) {
  const auto& all = Presets();
  const auto it = std::find_if(all.begin(), all.end(), [&](const Preset& p) { return p.name == name; });
  return it == all.end() ? nullptr : &*it;
}

}  // namespace bundler::cli
