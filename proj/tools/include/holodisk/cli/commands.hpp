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

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <variant>

#include "holodisk/boundary.hpp"
#include "holodisk/moduli.hpp"

namespace holodisk::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kNumericalFailure = 3,
  kInvariantViolation = 4,
};

struct RunConfig {
  std::string command;  // indices | solve | double | plane-curve | sweep | incidence | verify
  std::string input;
  std::string output;
  std::optional<double> tolerance;
  std::optional<int> truncation;
  std::string plot;  // optional CSV path
  std::optional<std::pair<int, int>> degrees;
};

/// Executes one command; machine-readable artifacts go to disk, a short
/// human-readable summary to `out`, diagnostics to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

using PlotSource = std::variant<const PartialIndexReport*, const ModuliChart*, const IncidenceFamily*>;

/// CSV for kind "scan", "chart" or "incidence"; the kind must match the
/// source. Column schemas are documented in docs/csv_schemas.md.
std::string emit_plot_data(const PlotSource& source, const std::string& kind);

std::string scan_csv(const PartialIndexReport& report);
std::string chart_csv(const ModuliChart& chart);
std::string incidence_csv(const IncidenceFamily& family, int m);
std::string plane_curve_csv(int first, int last);

}  // namespace holodisk::cli
