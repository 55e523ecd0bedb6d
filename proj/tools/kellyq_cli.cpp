// Copyright 2026 The kellyq Authors
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

// kellyq: run Kelly-gambling experiments from config files.
//
//   kellyq run <config> [--out DIR] [--set section.key=value]...
//   kellyq list-builtins
//   kellyq --version

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "kellyq/cli/builtins.hpp"
#include "kellyq/cli/run.hpp"

#ifndef KELLYQ_VERSION
#define KELLYQ_VERSION "unknown"
#endif

int main(int argc, char** argv) {
  CLI::App app{"Log-optimal gambling on classical and quantum outcomes"};
  app.set_version_flag("--version", std::string("kellyq ") + KELLYQ_VERSION);
  app.require_subcommand(0, 1);

  std::string config_path;
  std::string out_dir = "kellyq_out";
  std::vector<std::string> overrides;
  CLI::App* run = app.add_subcommand("run", "Run the experiment described by a config file");
  run->add_option("config", config_path, "Config file")->required();
  run->add_option("--out", out_dir, "Output directory for report.txt and results.csv");
  run->add_option("--set", overrides, "Override a config value as section.key=value")->take_all();

  CLI::App* list = app.add_subcommand("list-builtins", "List builtin states and scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kellyq::cli::kExitInvalid;
  }

  if (*run) return kellyq::cli::run(config_path, out_dir, overrides);
  (void)list;
  std::cout << kellyq::cli::list_builtins();
  return kellyq::cli::kExitOk;
}
