// Copyright 2026 The subtde Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "subtde/cli/commands.hpp"
#include "subtde/errors.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Subsample time-delay estimation and reflector localization"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string output;
  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("-c,--config", config_path, "configuration file (key = value lines)");
    sub->add_option("-s,--set", overrides, "override one key, e.g. --set snr_db=20");
    sub->add_option("-o,--output", output, "output file (default: stdout)");
  };
  add_common(app.add_subcommand("simulate", "per-source errors for one scenario"));
  add_common(app.add_subcommand("sweep", "aggregated errors along one parameter"));
  add_common(app.add_subcommand("ingest", "evaluate measured multichannel RIRs"));
  add_common(app.add_subcommand("report", "JSON summary of a simulate or ingest CSV"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : subtde::cli::kExitConfig;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  subtde::cli::RunConfig config;
  try {
    if (!config_path.empty()) config = subtde::cli::RunConfig::load(config_path);
    for (const auto& o : overrides) config.set_assignment(o);
    if (!output.empty()) config.set("output", output);
  } catch (const subtde::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return subtde::cli::kExitConfig;
  }
  return subtde::cli::run_command(command, config, std::cout, std::cerr);
}
