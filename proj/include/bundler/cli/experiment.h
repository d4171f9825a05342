#ifndef BUNDLER_CLI_EXPERIMENT_H_
#define BUNDLER_CLI_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "bundler/cli/config.h"
#include "bundler/sim/simulator.h"

namespace bundler::cli {

// Unloaded completion times shared by concurrent runs. Runs whose first
// path, return delay and access link agree share one table.
class SharedFctCache {
 public:
  std::vector<double> Slowdowns(const sim::RunResult& r, const sim::Scenario& s);

 private:
  struct Entry {
    std::mutex mu;
    std::unique_ptr<workload::UnloadedFctCache> cache;
  };
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<Entry>> entries_;
};

struct Job {
  std::string variant;
  sim::Scenario scenario;  // seed already set
};

struct JobResult {
  std::string variant;
  sim::Scenario scenario;
  sim::RunResult run;
  std::vector<double> slowdowns;  // parallel to run.flows
  double wall_seconds = 0;
};

// One job per variant and seed, in variant-major order. `seeds` replaces
// the configured list and `only` restricts the variants when nonempty.
std::optional<std::vector<Job>> PlanJobs(const ExperimentConfig& config,
                                         const std::vector<Setting>& overrides,
                                         const std::vector<uint64_t>& seeds,
                                         std::vector<ConfigError>* errors,
                                         const std::vector<std::string>& only = {});

// Runs every job on up to `threads` workers. Results keep job order.
std::vector<JobResult> RunJobs(const std::vector<Job>& jobs, unsigned threads,
                               SharedFctCache& cache,
                               const std::function<void(const JobResult&)>& on_done = {});

// summary.csv, one row per (variant, seed, site, band); seed "all" pools
// every seed. Flows that started during warmup are excluded.
constexpr int kSummarySchemaVersion = 1;
extern const std::vector<std::string> kSummaryColumns;

struct SummaryRow {
  int schema_version = kSummarySchemaVersion;
  std::string scenario;
  std::string variant;
  std::string seed;  // decimal, or "all"
  std::string site;
  std::string band;  // all, short, medium, long
  uint64_t flows = 0;
  std::optional<double> p50_slowdown;
  std::optional<double> p99_slowdown;
  std::optional<double> p50_fct;
  double throughput_bps = 0;
  double offered_bps = 0;
  std::string mode_fractions;  // "DelayControl:f;Competitive:f;Disabled:f", empty without a box
  double sendbox_wait_ms = 0;
  double network_wait_ms = 0;
  double reorder_mean = 0;
};

std::vector<SummaryRow> Summarize(const std::vector<JobResult>& results);
void WriteSummary(std::ostream& out, const std::vector<SummaryRow>& rows);
std::optional<std::vector<SummaryRow>> ReadSummary(std::istream& in, std::string* error);

// qdelay.csv: t,variant,seed,queue,delay_ms
void WriteQdelay(std::ostream& out, const std::vector<JobResult>& results);

// Writes summary.csv, qdelay.csv, traces/<variant>-seed<N>.csv and
// resolved/<variant>.conf into `out_dir`. Files are staged in a sibling
// directory and swapped in only once complete, so a failed write leaves any
// previous results untouched.
bool WriteArtifacts(const std::filesystem::path& out_dir, const std::vector<JobResult>& results,
                    const std::vector<SummaryRow>& rows, std::string* error);

// Comparison of summary files. The first input is the reference. Rows are
// matched on (site, band) when every input holds one variant, otherwise on
// (variant, site, band); only pooled rows take part. With a single input and
// a `baseline` variant, rows are compared against that variant instead.
struct ReportInput {
  std::string label;
  std::vector<SummaryRow> rows;
};

struct ReportLine {
  std::string label;
  std::string variant;
  std::string site;
  std::string band;
  uint64_t flows = 0;
  std::optional<double> p50_slowdown;
  std::optional<double> p99_slowdown;
  double throughput_bps = 0;
  // Percentage change relative to the reference row, when one exists.
  std::optional<double> p50_delta_pct;
  std::optional<double> p99_delta_pct;
  std::optional<double> throughput_delta_pct;
};

struct Report {
  std::vector<ReportLine> lines;
  bool has_deltas = false;
};

std::optional<Report> BuildReport(const std::vector<ReportInput>& inputs,
                                  const std::string& baseline, std::string* error);
void PrintReport(std::ostream& out, const Report& report);
// Plot-ready CSVs: slowdown.csv (one row per report line) and, when any
// deltas exist, deltas.csv.
bool WritePlotData(const std::filesystem::path& dir, const Report& report, std::string* error);

}  // namespace bundler::cli

#endif  // BUNDLER_CLI_EXPERIMENT_H_
