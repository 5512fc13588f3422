// Copyright 2026 The bellstab Authors
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
#include <map>
#include <string>

#include "CLI11.hpp"
#include "commands.hpp"
#include "run_config.hpp"

int main(int argc, char** argv) {
  using namespace bellstab::cli;

  CLI::App app{"Simulator for dissipative Bell-state stabilization of two qubits in a cavity"};
  app.set_version_flag("--version", std::string(bs_version()));

  std::string mode_text;
  app.add_option("mode", mode_text, "simulate | sweep | truncation | oracles | validate")
      ->required()
      ->check(CLI::IsMember({"simulate", "sweep", "truncation", "oracles", "validate"}));
  std::string config_path;
  app.add_option("--config", config_path, "key: value configuration file")
      ->check(CLI::ExistingFile);

  std::map<std::string, std::string> values;
  bool emit_plots = false;
  for (const auto& key : config_keys()) {
    const std::string name = std::string("--") + key.flag;
    if (std::string(key.key) == "emit_plots") {
      app.add_flag(name, emit_plots, key.help);
    } else {
      app.add_option(name, values[key.key], key.help);
    }
  }

  CLI11_PARSE(app, argc, argv);

  Settings overrides;
  for (const auto& key : config_keys()) {
    const std::string name = std::string("--") + key.flag;
    if (app.count(name) == 0) continue;
    overrides[key.key] = std::string(key.key) == "emit_plots" ? "true" : values[key.key];
  }

  try {
    const Settings file = config_path.empty() ? Settings{} : read_settings_file(config_path);
    const RunConfig config = resolve_config(*parse_mode(mode_text), file, overrides);
    return run_command(config, std::cout, std::cerr);
  } catch (const ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << "\n";
    return kExitUsage;
  }
}
