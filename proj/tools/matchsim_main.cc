// Copyright 2026 The matchsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end.
//
//   matchsim deviation --config configs/default.cfg --out out/a1 --seeds 20
//
// Exit status: 0 success, 1 configuration error, 2 runtime error.

#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "matchsim/config.h"
#include "matchsim/csv.h"
#include "matchsim/experiment.h"

namespace {

constexpr int kConfigErrorExit = 1;
constexpr int kRuntimeErrorExit = 2;

struct CommonFlags {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::string> seed;
  std::optional<std::string> seeds;
  std::vector<std::string> settings;
};

void AddCommonFlags(CLI::App* command, CommonFlags& flags) {
  command->add_option("--config", flags.config, "Experiment config file");
  command->add_option("--out", flags.out, "Output directory");
  command->add_option("--seed", flags.seed, "Base seed");
  command->add_option("--seeds", flags.seeds, "Number of seeds per scenario");
  command->add_option("--set", flags.settings,
                      "Extra key=value setting, applied after the config");
}

matchsim::ExperimentSpec BuildSpec(const std::string& mode,
                                   const CommonFlags& flags) {
  matchsim::ExperimentSpec spec =
      flags.config.empty() ? matchsim::ParseConfigText("")
                           : matchsim::ParseConfig(flags.config);
  matchsim::ApplySetting(spec, "mode", mode);
  for (const auto& setting : flags.settings) {
    const auto eq = setting.find('=');
    if (eq == std::string::npos) {
      throw matchsim::ConfigError("--set expects key=value, got '" + setting +
                                  "'");
    }
    matchsim::ApplySetting(spec, setting.substr(0, eq), setting.substr(eq + 1));
  }
  if (flags.out) matchsim::ApplySetting(spec, "output_dir", *flags.out);
  if (flags.seed) matchsim::ApplySetting(spec, "seed", *flags.seed);
  if (flags.seeds) matchsim::ApplySetting(spec, "seeds", *flags.seeds);
  spec.Validate();
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Repeated school-choice market simulator"};
  app.require_subcommand(1);

  CommonFlags flags;
  for (const char* mode :
       {"simulate", "deviation", "best-response", "sweep", "welfare-grid"}) {
    AddCommonFlags(app.add_subcommand(mode, std::string("Run ") + mode), flags);
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kConfigErrorExit;
  }

  const std::string mode = app.get_subcommands().front()->get_name();
  try {
    const matchsim::ExperimentSpec spec = BuildSpec(mode, flags);
    matchsim::RunExperiment(spec, &std::cout);
  } catch (const matchsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigErrorExit;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kRuntimeErrorExit;
  }
  return 0;
}
