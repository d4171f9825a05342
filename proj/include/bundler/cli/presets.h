#ifndef BUNDLER_CLI_PRESETS_H_
#define BUNDLER_CLI_PRESETS_H_

#include <string_view>
#include <vector>

namespace bundler::cli {

// A named experiment shipped with the library, in the config grammar.
struct Preset {
  std::string_view name;
  std::string_view description;
  std::string_view text;
};

const std::vector<Preset>& Presets();
const Preset* FindPreset(std::string_view name);

}  // namespace bundler::cli

#endif  // BUNDLER_CLI_PRESETS_H_
