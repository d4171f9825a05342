#include "bundler/cli/experiment.h"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>
#include <thread>

namespace bundler::cli {
namespace fs = std::filesystem;

const std::vector<std::string> kSummaryColumns = {
    "schema_version", "scenario",       "variant",         "seed",         "site",
    "band",           "flows",          "p50_slowdown",    "p99_slowdown", "p50_fct",
    "throughput_bps", "offered_bps",    "mode_fractions",  "sendbox_wait_ms",
    "network_wait_ms", "reorder_mean"};

namespace {

std::string TopologyKey(const sim::Scenario& s) {
  std::ostringstream o;
  o << std::setprecision(17) << s.link.paths.front().bandwidth << '/'
    << s.link.paths.front().delay << '/' << s.link.ReverseDelay() << '/'
    << s.link.access_bandwidth << '/' << s.link.buffer_packets;
  return o.str();
}

std::string Fmt(double v) {
  std::ostringstream o;
  o << std::setprecision(9) << v;
  return o.str();
}

std::string Fmt(const std::optional<double>& v) { return v ? Fmt(*v) : std::string(); }

std::vector<std::string> SplitCsv(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else if (c != '\r') {
      cur.push_back(c);
    }
  }
  out.push_back(std::move(cur));
  return out;
}

// Flows, slowdowns and completion times of one site after warmup.
struct SiteFlows {
  std::vector<uint64_t> sizes;
  std::vector<double> slowdowns;
  std::vector<double> fcts;

  void Append(const SiteFlows& o) {
    sizes.insert(sizes.end(), o.sizes.begin(), o.sizes.end());
    slowdowns.insert(slowdowns.end(), o.slowdowns.begin(), o.slowdowns.end());
    fcts.insert(fcts.end(), o.fcts.begin(), o.fcts.end());
  }
};

SiteFlows CollectSite(const JobResult& jr, size_t site) {
  SiteFlows out;
  const auto& flows = jr.run.flows;
  for (size_t i = 0; i < flows.size(); ++i) {
    if (flows[i].bundle_id != sim::BundleIdOf(site)) continue;
    if (flows[i].t_start < jr.scenario.warmup) continue;
    out.sizes.push_back(flows[i].size);
    out.slowdowns.push_back(jr.slowdowns[i]);
    out.fcts.push_back(flows[i].fct());
  }
  return out;
}

// Per-site scalars that pooled rows average over seeds.
struct SiteScalars {
  double throughput = 0;
  double offered = 0;
  std::array<double, sim::kNumModes> mode_frac{};
  double sendbox_wait_ms = 0;
  double network_wait_ms = 0;
  double reorder_mean = 0;
};

SiteScalars ScalarsOf(const JobResult& jr, size_t site) {
  const auto& st = jr.run.sites[site];
  const auto& w = jr.scenario.sites[site].workload;
  SiteScalars out;
  out.throughput = st.throughput;
  const double active = std::min(w.stop, jr.run.end_time) - w.start;
  out.offered = active > 0 ? 8.0 * static_cast<double>(st.offered_bytes) / active : 0;
  double total = 0;
  for (double t : st.mode_time) total += t;
  for (size_t m = 0; m < sim::kNumModes; ++m) {
    out.mode_frac[m] = total > 0 ? st.mode_time[m] / total : 0;
  }
  out.sendbox_wait_ms = st.mean_sendbox_wait * 1e3;
  out.network_wait_ms = st.mean_network_wait * 1e3;
  out.reorder_mean = st.reorder_mean;
  return out;
}

std::string ModeFractions(bool bundler, const std::array<double, sim::kNumModes>& f) {
  if (!bundler) return {};
  std::string out;
  for (size_t m = 0; m < sim::kNumModes; ++m) {
    if (m) out += ';';
    out += std::string(control::ToString(static_cast<control::ControllerMode>(m))) + ':' +
           Fmt(std::round(f[m] * 1e4) / 1e4);
  }
  return out;
}

void AppendBandRows(SummaryRow base, const SiteFlows& flows, std::vector<SummaryRow>& rows) {
  base.band = "all";
  base.flows = flows.sizes.size();
  if (!flows.sizes.empty()) {
    base.p50_slowdown = workload::Percentile(flows.slowdowns, 50);
    base.p99_slowdown = workload::Percentile(flows.slowdowns, 99);
    base.p50_fct = workload::Percentile(flows.fcts, 50);
  }
  rows.push_back(base);
  const auto p50 = workload::BandedPercentile(flows.sizes, flows.slowdowns, 50);
  const auto p99 = workload::BandedPercentile(flows.sizes, flows.slowdowns, 99);
  const auto f50 = workload::BandedPercentile(flows.sizes, flows.fcts, 50);
  for (const auto band : workload::kAllBands) {
    if (!p50.contains(band)) continue;
    SummaryRow row = base;
    row.band = std::string(workload::ToString(band));
    row.flows = static_cast<uint64_t>(std::count_if(
        flows.sizes.begin(), flows.sizes.end(),
        [band](uint64_t s) { return workload::BandOf(s) == band; }));
    row.p50_slowdown = p50.at(band);
    row.p99_slowdown = p99.at(band);
    row.p50_fct = f50.at(band);
    rows.push_back(row);
  }
}

bool WriteFile(const fs::path& path, const std::function<void(std::ostream&)>& body,
               std::string* error) {
  std::ofstream out(path);
  if (out) body(out);
  out.flush();
  if (!out) {
    if (error) *error = "cannot write " + path.string();
    return false;
  }
  return true;
}

}  // namespace

std::vector<double> SharedFctCache::Slowdowns(const sim::RunResult& r, const sim::Scenario& s) {
  Entry* entry = nullptr;
  {
    std::lock_guard lock(mu_);
    auto& slot = entries_[TopologyKey(s)];
    if (!slot) {
      slot = std::make_unique<Entry>();
      slot->cache = std::make_unique<workload::UnloadedFctCache>(
          [s](uint64_t bytes) { return sim::UnloadedFct(s, bytes); });
    }
    entry = slot.get();
  }
  std::lock_guard lock(entry->mu);
  return sim::Slowdowns(r, *entry->cache);
}

std::optional<std::vector<Job>> PlanJobs(const ExperimentConfig& config,
                                         const std::vector<Setting>& overrides,
                                         const std::vector<uint64_t>& seeds,
                                         std::vector<ConfigError>* errors,
                                         const std::vector<std::string>& only) {
  const auto names = VariantNames(config);
  for (const auto& v : only) {
    if (std::find(names.begin(), names.end(), v) == names.end()) {
      if (errors) *errors = {{0, v, "no such variant"}};
      return std::nullopt;
    }
  }
  std::vector<Job> jobs;
  for (const auto& variant : names) {
    if (!only.empty() && std::find(only.begin(), only.end(), variant) == only.end()) continue;
    auto built = BuildScenario(config, variant, overrides, errors);
    if (!built) return std::nullopt;
    for (uint64_t seed : seeds.empty() ? built->seeds : seeds) {
      Job job{variant, built->scenario};
      job.scenario.seed = seed;
      jobs.push_back(std::move(job));
    }
  }
  return jobs;
}

std::vector<JobResult> RunJobs(const std::vector<Job>& jobs, unsigned threads,
                               SharedFctCache& cache,
                               const std::function<void(const JobResult&)>& on_done) {
  std::vector<JobResult> results(jobs.size());
  std::atomic<size_t> next{0};
  std::mutex done_mu;
  auto worker = [&] {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const auto t0 = std::chrono::steady_clock::now();
      JobResult& jr = results[i];
      jr.variant = jobs[i].variant;
      jr.scenario = jobs[i].scenario;
      jr.run = sim::Run(jr.scenario);
      jr.slowdowns = cache.Slowdowns(jr.run, jr.scenario);
      jr.wall_seconds =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      if (on_done) {
        std::lock_guard lock(done_mu);
        on_done(jr);
      }
    }
  };
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<size_t>(jobs.size(), 1)));
  std::vector<std::jthread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  pool.clear();
  return results;
}

std::vector<SummaryRow> Summarize(const std::vector<JobResult>& results) {
  std::vector<SummaryRow> rows;
  std::vector<std::string> variants;
  for (const auto& jr : results) {
    if (std::find(variants.begin(), variants.end(), jr.variant) == variants.end()) {
      variants.push_back(jr.variant);
    }
  }
  for (const auto& variant : variants) {
    std::vector<const JobResult*> runs;
    for (const auto& jr : results) {
      if (jr.variant == variant) runs.push_back(&jr);
    }
    const auto& sc = runs.front()->scenario;
    for (size_t site = 0; site < sc.sites.size(); ++site) {
      SiteFlows pooled;
      SiteScalars mean;
      for (const JobResult* jr : runs) {
        const SiteFlows flows = CollectSite(*jr, site);
        const SiteScalars sv = ScalarsOf(*jr, site);
        SummaryRow row;
        row.scenario = sc.name;
        row.variant = variant;
        row.seed = std::to_string(jr->scenario.seed);
        row.site = sc.sites[site].name;
        row.throughput_bps = sv.throughput;
        row.offered_bps = sv.offered;
        row.mode_fractions = ModeFractions(sc.sites[site].bundler, sv.mode_frac);
        row.sendbox_wait_ms = sv.sendbox_wait_ms;
        row.network_wait_ms = sv.network_wait_ms;
        row.reorder_mean = sv.reorder_mean;
        AppendBandRows(row, flows, rows);
        pooled.Append(flows);
        const double n = static_cast<double>(runs.size());
        mean.throughput += sv.throughput / n;
        mean.offered += sv.offered / n;
        for (size_t m = 0; m < sim::kNumModes; ++m) mean.mode_frac[m] += sv.mode_frac[m] / n;
        mean.sendbox_wait_ms += sv.sendbox_wait_ms / n;
        mean.network_wait_ms += sv.network_wait_ms / n;
        mean.reorder_mean += sv.reorder_mean / n;
      }
      SummaryRow row;
      row.scenario = sc.name;
      row.variant = variant;
      row.seed = "all";
      row.site = sc.sites[site].name;
      row.throughput_bps = mean.throughput;
      row.offered_bps = mean.offered;
      row.mode_fractions = ModeFractions(sc.sites[site].bundler, mean.mode_frac);
      row.sendbox_wait_ms = mean.sendbox_wait_ms;
      row.network_wait_ms = mean.network_wait_ms;
      row.reorder_mean = mean.reorder_mean;
      AppendBandRows(row, pooled, rows);
    }
  }
  return rows;
}

void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& rows) {
  for (size_t i = 0; i < kSummaryColumns.size(); ++i) out << (i ? "," : "") << kSummaryColumns[i];
  out << '\n';
  for (const auto& r : rows) {
    out << r.schema_version << ',' << r.scenario << ',' << r.variant << ',' << r.seed << ','
        << r.site << ',' << r.band << ',' << r.flows << ',' << Fmt(r.p50_slowdown) << ','
        << Fmt(r.p99_slowdown) << ',' << Fmt(r.p50_fct) << ',' << Fmt(r.throughput_bps) << ','
        << Fmt(r.offered_bps) << ',' << r.mode_fractions << ',' << Fmt(r.sendbox_wait_ms) << ','
        << Fmt(r.network_wait_ms) << ',' << Fmt(r.reorder_mean) << '\n';
  }
}

std::optional<std::vector<SummaryRow>> ReadSummary(std::istream& in, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<std::vector<SummaryRow>> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  std::string line;
  if (!std::getline(in, line)) return fail("empty summary");
  const auto header = SplitCsv(line);
  std::map<std::string, size_t> col;
  for (size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
  if (!col.contains("schema_version")) return fail("missing schema_version column");
  for (const auto& name : kSummaryColumns) {
    if (!col.contains(name)) return fail("missing column " + name);
  }
  std::vector<SummaryRow> rows;
  int lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    const auto f = SplitCsv(line);
    if (f.size() != header.size()) {
      return fail("line " + std::to_string(lineno) + ": expected " +
                  std::to_string(header.size()) + " fields");
    }
    const std::string& version = f[col["schema_version"]];
    if (version != std::to_string(kSummarySchemaVersion)) {
      return fail("line " + std::to_string(lineno) + ": unsupported schema version '" + version +
                  "'");
    }
    auto num = [&](const std::string& name) -> std::optional<double> {
      const std::string& v = f[col[name]];
      if (v.empty()) return std::nullopt;
      return ParseNumber(v);
    };
    SummaryRow r;
    r.scenario = f[col["scenario"]];
    r.variant = f[col["variant"]];
    r.seed = f[col["seed"]];
    r.site = f[col["site"]];
    r.band = f[col["band"]];
    r.flows = static_cast<uint64_t>(num("flows").value_or(0));
    r.p50_slowdown = num("p50_slowdown");
    r.p99_slowdown = num("p99_slowdown");
    r.p50_fct = num("p50_fct");
    r.throughput_bps = num("throughput_bps").value_or(0);
    r.offered_bps = num("offered_bps").value_or(0);
    r.mode_fractions = f[col["mode_fractions"]];
    r.sendbox_wait_ms = num("sendbox_wait_ms").value_or(0);
    r.network_wait_ms = num("network_wait_ms").value_or(0);
    r.reorder_mean = num("reorder_mean").value_or(0);
    rows.push_back(std::move(r));
  }
  return rows;
}

void WriteQdelay(std::ostream& out, const std::vector<JobResult>& results) {
  out << "t,variant,seed,queue,delay_ms\n";
  for (const auto& jr : results) {
    for (const auto& q : jr.run.qdelay) {
      out << Fmt(q.t) << ',' << jr.variant << ',' << jr.scenario.seed << ',' << q.queue << ','
          << Fmt(q.delay * 1e3) << '\n';
    }
  }
}

bool WriteArtifacts(const fs::path& out_dir, const std::vector<JobResult>& results,
                    const std::vector<SummaryRow>& rows, std::string* error) {
  const fs::path target = fs::absolute(out_dir).lexically_normal();
  const fs::path parent = target.parent_path();
  const std::string tag = std::to_string(::getpid());
  const fs::path staging = parent / ("." + target.filename().string() + ".staging-" + tag);
  const fs::path old = parent / ("." + target.filename().string() + ".old-" + tag);
  std::error_code ec;
  fs::create_directories(parent, ec);
  fs::remove_all(staging, ec);
  if (!fs::create_directories(staging / "traces", ec) ||
      !fs::create_directories(staging / "resolved", ec)) {
    if (error) *error = "cannot create " + staging.string() + ": " + ec.message();
    return false;
  }
  bool ok = WriteFile(staging / "summary.csv", [&](std::ostream& o) { WriteSummary(o, rows); },
                      error) &&
            WriteFile(staging / "qdelay.csv", [&](std::ostream& o) { WriteQdelay(o, results); },
                      error);
  std::set<std::string> resolved;
  for (const auto& jr : results) {
    if (!ok) break;
    const std::string name = jr.variant.empty() ? "default" : jr.variant;
    ok = WriteFile(staging / "traces" / (name + "-seed" + std::to_string(jr.scenario.seed) + ".csv"),
                   [&](std::ostream& o) { sim::WriteTrace(o, jr.run); }, error);
    if (ok && resolved.insert(name).second) {
      ok = WriteFile(staging / "resolved" / (name + ".conf"),
                     [&](std::ostream& o) { o << SerializeScenario(jr.scenario, {jr.scenario.seed}); },
                     error);
    }
  }
  if (!ok) {
    fs::remove_all(staging, ec);
    return false;
  }
  const bool had_old = fs::exists(target);
  if (had_old) {
    fs::rename(target, old, ec);
    if (ec) {
      if (error) *error = "cannot replace " + target.string() + ": " + ec.message();
      fs::remove_all(staging, ec);
      return false;
    }
  }
  fs::rename(staging, target, ec);
  if (ec) {
    if (error) *error = "cannot move results into " + target.string() + ": " + ec.message();
    if (had_old) fs::rename(old, target, ec);
    return false;
  }
  if (had_old) fs::remove_all(old, ec);
  return true;
}

std::optional<Report> BuildReport(const std::vector<ReportInput>& inputs,
                                  const std::string& baseline, std::string* error) {
  auto fail = [&](std::string msg) -> std::optional<Report> {
    if (error) *error = std::move(msg);
    return std::nullopt;
  };
  if (inputs.empty()) return fail("no summaries given");
  std::optional<std::string> scenario;
  for (const auto& in : inputs) {
    for (const auto& r : in.rows) {
      if (!scenario) scenario = r.scenario;
      if (r.scenario != *scenario) {
        return fail("scenario mismatch: '" + *scenario + "' vs '" + r.scenario + "' in " +
                    in.label);
      }
    }
  }
  bool single_variant = true;
  for (const auto& in : inputs) {
    std::set<std::string> variants;
    for (const auto& r : in.rows) variants.insert(r.variant);
    if (variants.size() > 1) single_variant = false;
  }
  if (inputs.size() == 1 && !baseline.empty()) single_variant = true;

  using Key = std::tuple<std::string, std::string, std::string>;
  auto key_of = [&](const SummaryRow& r) {
    return Key{single_variant ? std::string() : r.variant, r.site, r.band};
  };
  std::map<Key, const SummaryRow*> reference;
  if (inputs.size() > 1) {
    for (const auto& r : inputs.front().rows) {
      if (r.seed == "all") reference[key_of(r)] = &r;
    }
  } else if (!baseline.empty()) {
    for (const auto& r : inputs.front().rows) {
      if (r.seed == "all" && r.variant == baseline) reference[key_of(r)] = &r;
    }
    if (reference.empty()) return fail("no variant named '" + baseline + "'");
  }

  auto pct = [](std::optional<double> x, std::optional<double> ref) -> std::optional<double> {
    if (!x || !ref || *ref == 0) return std::nullopt;
    return (*x - *ref) / *ref * 100.0;
  };
  Report report;
  report.has_deltas = !reference.empty();
  for (size_t i = 0; i < inputs.size(); ++i) {
    for (const auto& r : inputs[i].rows) {
      if (r.seed != "all") continue;
      ReportLine line;
      line.label = inputs[i].label;
      line.variant = r.variant;
      line.site = r.site;
      line.band = r.band;
      line.flows = r.flows;
      line.p50_slowdown = r.p50_slowdown;
      line.p99_slowdown = r.p99_slowdown;
      line.throughput_bps = r.throughput_bps;
      const bool is_reference = inputs.size() > 1 ? i == 0 : r.variant == baseline;
      if (auto it = reference.find(key_of(r)); it != reference.end() && !is_reference) {
        line.p50_delta_pct = pct(r.p50_slowdown, it->second->p50_slowdown);
        line.p99_delta_pct = pct(r.p99_slowdown, it->second->p99_slowdown);
        line.throughput_delta_pct = pct(r.throughput_bps, it->second->throughput_bps);
      }
      report.lines.push_back(std::move(line));
    }
  }
  return report;
}

void PrintReport(std::ostream& out, const Report& report) {
  auto opt = [](std::optional<double> v, int prec) {
    if (!v) return std::string("-");
    std::ostringstream o;
    o << std::fixed << std::setprecision(prec) << *v;
    return o.str();
  };
  auto delta = [&](std::optional<double> v) {
    if (!v) return std::string("-");
    std::ostringstream o;
    o << std::showpos << std::fixed << std::setprecision(1) << *v << '%';
    return o.str();
  };
  out << std::left << std::setw(24) << "input" << std::setw(16) << "variant" << std::setw(12)
      << "site" << std::setw(8) << "band" << std::right << std::setw(9) << "flows"
      << std::setw(10) << "p50" << std::setw(10) << "p99" << std::setw(11) << "tput_mbps";
  if (report.has_deltas) {
    out << std::setw(10) << "d_p50" << std::setw(10) << "d_p99" << std::setw(10) << "d_tput";
  }
  out << '\n';
  for (const auto& l : report.lines) {
    out << std::left << std::setw(24) << l.label << std::setw(16)
        << (l.variant.empty() ? "-" : l.variant) << std::setw(12) << l.site << std::setw(8)
        << l.band << std::right << std::setw(9) << l.flows << std::setw(10)
        << opt(l.p50_slowdown, 3) << std::setw(10) << opt(l.p99_slowdown, 3) << std::setw(11)
        << opt(l.throughput_bps / 1e6, 2);
    if (report.has_deltas) {
      out << std::setw(10) << delta(l.p50_delta_pct) << std::setw(10) << delta(l.p99_delta_pct)
          << std::setw(10) << delta(l.throughput_delta_pct);
    }
    out << '\n';
  }
}

bool WritePlotData(const fs::path& dir, const Report& report, std::string* error) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  const bool ok = WriteFile(
      dir / "slowdown.csv",
      [&](std::ostream& o) {
        o << "input,variant,site,band,flows,p50_slowdown,p99_slowdown,throughput_bps\n";
        for (const auto& l : report.lines) {
          o << l.label << ',' << l.variant << ',' << l.site << ',' << l.band << ',' << l.flows
            << ',' << Fmt(l.p50_slowdown) << ',' << Fmt(l.p99_slowdown) << ','
            << Fmt(l.throughput_bps) << '\n';
        }
      },
      error);
  if (!ok || !report.has_deltas) return ok;
  return WriteFile(
      dir / "deltas.csv",
      [&](std::ostream& o) {
        o << "input,variant,site,band,p50_delta_pct,p99_delta_pct,throughput_delta_pct\n";
        for (const auto& l : report.lines) {
          if (!l.p50_delta_pct && !l.p99_delta_pct && !l.throughput_delta_pct) continue;
          o << l.label << ',' << l.variant << ',' << l.site << ',' << l.band << ','
            << Fmt(l.p50_delta_pct) << ',' << Fmt(l.p99_delta_pct) << ','
            << Fmt(l.throughput_delta_pct) << '\n';
        }
      },
      error);
}

}  // namespace bundler::cli
