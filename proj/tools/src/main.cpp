// Copyright 2026 The holodisk Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "holodisk/cli/commands.hpp"

int main(int argc, char** argv) {
  using holodisk::cli::RunConfig;
  CLI::App app{"holodisk: partial indices, linear dbar problems and disk moduli"};
  RunConfig cfg;
  std::string degrees;
  double tol = 0.0;
  int trunc = 0;

  app.add_option("command", cfg.command, "indices | solve | double | plane-curve | sweep | incidence | verify")
      ->required()
      ->check(CLI::IsMember({"indices", "solve", "double", "plane-curve", "sweep", "incidence", "verify"}));
  app.add_option("-i,--input", cfg.input, "JSON config (verify/incidence also accept a chart directory)");
  app.add_option("-o,--output", cfg.output, "report file, or chart directory for sweep");
  auto* tol_opt = app.add_option("--tol", tol, "tolerance override")->check(CLI::PositiveNumber);
  auto* trunc_opt = app.add_option("--truncation", trunc, "truncation override")->check(CLI::PositiveNumber);
  app.add_option("--plot", cfg.plot, "write plot-ready CSV to this path");
  app.add_option("--degrees", degrees, "plane-curve degree range first:last");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : holodisk::cli::kUsage;
  }
  if (*tol_opt) cfg.tolerance = tol;
  if (*trunc_opt) cfg.truncation = trunc;
  if (!degrees.empty()) {
    const auto colon = degrees.find(':');
    try {
      if (colon == std::string::npos) {
        const int d = std::stoi(degrees);
        cfg.degrees = std::make_pair(d, d);
      } else {
        cfg.degrees = std::make_pair(std::stoi(degrees.substr(0, colon)), std::stoi(degrees.substr(colon + 1)));
      }
    } catch (const std::exception&) {
      std::cerr << "error: --degrees expects first:last, got '" << degrees << "'\n";
      return holodisk::cli::kUsage;
    }
  }
  return holodisk::cli::run(cfg, std::cout, std::cerr);
}
