#ifndef BUNDLER_CLI_COMMANDS_H_
#define BUNDLER_CLI_COMMANDS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace bundler::cli {

// Exit statuses shared by every command.
constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;  // could not write results
constexpr int kExitUsage = 2;    // unreadable or invalid input

// Results land in --out, else in $BUNDLER_OUT_DIR/<scenario>, else in
// results/<scenario>.
constexpr const char* kOutDirEnv = "BUNDLER_OUT_DIR";

struct RunOptions {
  std::string config_path;  // used when `preset` is empty
  std::string preset;
  std::string seeds;  // "N" runs seeds 1..N; "a,b,c" runs exactly those
  std::string out_dir;
  std::vector<std::string> overrides;  // key=value
  std::vector<std::string> variants;   // empty: all
  unsigned jobs = 0;                   // 0: one per hardware thread
  bool quiet = false;
};

// "3" -> {1,2,3}; "4,9" -> {4,9}.
std::optional<std::vector<uint64_t>> ParseSeedsFlag(const std::string& text);

int CmdRun(const RunOptions& opts, std::ostream& out, std::ostream& err);
int CmdPresets(const std::string& show, std::ostream& out, std::ostream& err);
int CmdReport(const std::vector<std::string>& summaries, const std::string& baseline,
              const std::string& plot_dir, std::ostream& out, std::ostream& err);

}  // namespace bundler::cli

#endif  // BUNDLER_CLI_COMMANDS_H_
