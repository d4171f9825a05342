#ifndef BUNDLER_CLI_CONFIG_H_
#define BUNDLER_CLI_CONFIG_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "bundler/sim/scenario.h"

namespace bundler::cli {

// Experiment description text. Grammar, one item per line:
//
//   # comment (also after a value)
//   [scenario]            scenario-wide keys
//   [link]                network keys
//   [site NAME]           one sending site; sites are ordered by appearance
//   [variant NAME]        overrides applied on top of the base for one variant
//   key = value
//
// Inside [variant] sections keys are fully qualified: scenario.duration,
// link.buffer, site.NAME.load. Numbers accept k/M/G suffixes (1e3, 1e6,
// 1e9) and times accept an "ms" suffix. Lists are comma separated.
struct Setting {
  std::string key;  // fully qualified
  std::string value;
  int line = 0;     // 0 for command-line overrides
};

struct ConfigError {
  int line = 0;
  std::string field;
  std::string message;

  std::string ToString() const;
};

struct ExperimentConfig {
  std::vector<Setting> base;
  std::vector<std::string> site_order;
  std::vector<std::pair<std::string, std::vector<Setting>>> variants;
};

std::optional<ExperimentConfig> ParseConfig(std::string_view text, std::vector<ConfigError>* errors);

// "key=value" from the command line.
std::optional<Setting> ParseOverride(std::string_view text, ConfigError* error);

// Base settings, then the variant's (if named), then `overrides`, applied in
// order to a default scenario; followed by Validate. Seeds are returned
// separately because one config describes many runs.
struct BuiltScenario {
  sim::Scenario scenario;
  std::vector<uint64_t> seeds;
  std::string baseline;  // variant to compare against in reports
};

std::optional<BuiltScenario> BuildScenario(const ExperimentConfig& config,
                                           const std::string& variant,
                                           const std::vector<Setting>& overrides,
                                           std::vector<ConfigError>* errors);

// Variant names, or a single empty name when the config declares none.
std::vector<std::string> VariantNames(const ExperimentConfig& config);

// Serializes one scenario in the grammar above, without variants. Parsing
// and building the output yields an equal scenario.
std::string SerializeScenario(const sim::Scenario& s, const std::vector<uint64_t>& seeds);

// Value parsers shared with the command line.
std::optional<double> ParseNumber(std::string_view s);
std::optional<double> ParseSeconds(std::string_view s);
std::optional<bool> ParseBool(std::string_view s);

}  // namespace bundler::cli

#endif  // BUNDLER_CLI_CONFIG_H_
