#include "bundler/cli/commands.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "bundler/cli/config.h"
#include "bundler/cli/experiment.h"
#include "bundler/cli/presets.h"

namespace bundler::cli {
namespace {

std::optional<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream s;
  s << in.rdbuf();
  if (in.bad()) return std::nullopt;
  return s.str();
}

void PrintErrors(std::ostream& err, const std::string& source,
                 const std::vector<ConfigError>& errors) {
  for (const auto& e : errors) err << source << ": " << e.ToString() << '\n';
}

}  // namespace

std::optional<std::vector<uint64_t>> ParseSeedsFlag(const std::string& text) {
  if (text.find(',') == std::string::npos) {
    const auto n = ParseNumber(text);
    if (!n || *n < 1 || *n != static_cast<double>(static_cast<uint64_t>(*n))) return std::nullopt;
    std::vector<uint64_t> seeds;
    for (uint64_t s = 1; s <= static_cast<uint64_t>(*n); ++s) seeds.push_back(s);
    return seeds;
  }
  std::vector<uint64_t> seeds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto n = ParseNumber(item);
    if (!n || *n < 0 || *n != static_cast<double>(static_cast<uint64_t>(*n))) return std::nullopt;
    seeds.push_back(static_cast<uint64_t>(*n));
  }
  if (seeds.empty()) return std::nullopt;
  return seeds;
}

int CmdRun(const RunOptions& opts, std::ostream& out, std::ostream& err) {
  std::string source;
  std::string text;
  if (!opts.preset.empty()) {
    const Preset* p = FindPreset(opts.preset);
    if (!p) {
      err << "unknown preset '" << opts.preset << "' (see `bundler presets`)\n";
      return kExitUsage;
    }
    source = "preset " + opts.preset;
    text = std::string(p->text);
  } else {
    if (opts.config_path.empty()) {
      err << "run: give a config file or --preset\n";
      return kExitUsage;
    }
    auto contents = ReadFile(opts.config_path);
    if (!contents || std::filesystem::is_directory(opts.config_path)) {
      err << "cannot read config '" << opts.config_path << "'\n";
      return kExitUsage;
    }
    source = opts.config_path;
    text = std::move(*contents);
  }

  std::vector<ConfigError> errors;
  const auto config = ParseConfig(text, &errors);
  if (!config) {
    PrintErrors(err, source, errors);
    return kExitUsage;
  }
  std::vector<Setting> overrides;
  for (const auto& o : opts.overrides) {
    ConfigError e;
    auto s = ParseOverride(o, &e);
    if (!s) {
      PrintErrors(err, "--set", {e});
      return kExitUsage;
    }
    overrides.push_back(std::move(*s));
  }
  std::vector<uint64_t> seeds;
  if (!opts.seeds.empty()) {
    auto parsed = ParseSeedsFlag(opts.seeds);
    if (!parsed) {
      err << "--seeds: expected a count or a comma-separated list\n";
      return kExitUsage;
    }
    seeds = std::move(*parsed);
  }
  const auto jobs = PlanJobs(*config, overrides, seeds, &errors, opts.variants);
  if (!jobs) {
    PrintErrors(err, source, errors);
    return kExitUsage;
  }
  const auto first = BuildScenario(*config, VariantNames(*config).front(), overrides, &errors);
  const std::string scenario_name = first->scenario.name;

  std::filesystem::path out_dir = opts.out_dir;
  if (out_dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    out_dir = std::filesystem::path(env && *env ? env : "results") / scenario_name;
  }

  unsigned threads = opts.jobs ? opts.jobs : std::max(1u, std::thread::hardware_concurrency());
  SharedFctCache cache;
  size_t done = 0;
  const auto results = RunJobs(*jobs, threads, cache, [&](const JobResult& jr) {
    ++done;
    if (opts.quiet) return;
    err << '[' << done << '/' << jobs->size() << "] "
        << (jr.variant.empty() ? scenario_name : jr.variant) << " seed " << jr.scenario.seed
        << ": " << jr.run.flows.size() << " flows, " << jr.run.end_time << " s simulated in "
        << jr.wall_seconds << " s\n";
  });
  const auto rows = Summarize(results);
  std::string error;
  if (!WriteArtifacts(out_dir, results, rows, &error)) {
    err << error << '\n';
    return kExitFailure;
  }
  const auto report = BuildReport({{scenario_name, rows}}, first->baseline, &error);
  if (report) PrintReport(out, *report);
  out << "results in " << out_dir.string() << '\n';
  return kExitOk;
}

int CmdPresets(const std::string& show, std::ostream& out, std::ostream& err) {
  if (!show.empty()) {
    const Preset* p = FindPreset(show);
    if (!p) {
      err << "unknown preset '" << show << "'\n";
      return kExitUsage;
    }
    out << p->text;
    return kExitOk;
  }
  for (const auto& p : Presets()) out << p.name << "\t" << p.description << '\n';
  return kExitOk;
}

int CmdReport(const std::vector<std::string>& summaries, const std::string& baseline,
              const std::string& plot_dir, std::ostream& out, std::ostream& err) {
  if (summaries.empty()) {
    err << "report: give at least one summary.csv\n";
    return kExitUsage;
  }
  std::vector<ReportInput> inputs;
  for (const auto& path : summaries) {
    std::ifstream in(path);
    if (!in) {
      err << "cannot read '" << path << "'\n";
      return kExitUsage;
    }
    std::string error;
    auto rows = ReadSummary(in, &error);
    if (!rows) {
      err << path << ": " << error << '\n';
      return kExitUsage;
    }
    // Label inputs by their results directory when the file name is the default.
    const std::filesystem::path p(path);
    std::string label = p.filename() == "summary.csv" && p.has_parent_path()
                            ? p.parent_path().filename().string()
                            : p.filename().string();
    if (label.empty()) label = path;
    inputs.push_back({label, std::move(*rows)});
  }
  std::string error;
  const auto report = BuildReport(inputs, baseline, &error);
  if (!report) {
    err << "report: " << error << '\n';
    return kExitUsage;
  }
  PrintReport(out, *report);
  if (!plot_dir.empty() && !WritePlotData(plot_dir, *report, &error)) {
    err << error << '\n';
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace bundler::cli
