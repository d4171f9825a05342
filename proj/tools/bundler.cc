#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bundler/cli/commands.h"

int main(int argc, char** argv) {
  using namespace bundler::cli;
  CLI::App app{"Bundler experiments: run presets or configs, list presets, compare summaries"};
  app.require_subcommand(1);

  RunOptions run;
  auto* run_cmd = app.add_subcommand("run", "run a config file or preset over its seeds");
  run_cmd->add_option("config", run.config_path, "experiment config file");
  run_cmd->add_option("--preset", run.preset, "shipped preset name");
  run_cmd->add_option("--seeds", run.seeds, "seed count N (1..N) or a list a,b,c");
  run_cmd->add_option("--out", run.out_dir,
                      std::string("output directory (default $") + kOutDirEnv +
                          "/<scenario> or results/<scenario>)");
  run_cmd->add_option("--set", run.overrides, "override key=value, e.g. site.web.load=48M");
  run_cmd->add_option("--variants", run.variants, "run only these variants")->delimiter(',');
  run_cmd->add_option("--jobs", run.jobs, "parallel runs (default: hardware threads)");
  run_cmd->add_flag("--quiet", run.quiet, "no progress lines");

  std::string show;
  auto* presets_cmd = app.add_subcommand("presets", "list shipped presets");
  presets_cmd->add_option("--show", show, "print one preset's config text");

  std::vector<std::string> summaries;
  std::string baseline;
  std::string plot_dir;
  auto* report_cmd = app.add_subcommand("report", "compare summary.csv files");
  report_cmd->add_option("summaries", summaries, "summary.csv files; the first is the reference")
      ->required();
  report_cmd->add_option("--baseline", baseline,
                         "with one input, compare variants against this one");
  report_cmd->add_option("--plot-dir", plot_dir, "write plot-ready CSVs here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (*run_cmd) return CmdRun(run, std::cout, std::cerr);
  if (*presets_cmd) return CmdPresets(show, std::cout, std::cerr);
  return CmdReport(summaries, baseline, plot_dir, std::cout, std::cerr);
}
