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
//
// JSON encodings of loops, reports, perturbations and moduli charts.
// Complex numbers are two-element arrays [re, im].

#pragma once

#include <filesystem>

#include "json.hpp"

#include "holodisk/boundary.hpp"
#include "holodisk/dbar.hpp"
#include "holodisk/doubling.hpp"
#include "holodisk/moduli.hpp"

namespace holodisk::cli {

using json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

/// Rejects documents whose "version" is missing or unsupported.
void check_version(const json& doc);

json to_json(Complex c);
Complex complex_from_json(const json& j);

json to_json(const RVector& v);
RVector rvector_from_json(const json& j);
json to_json(const CVector& v);

/// {"rows", "cols", "terms": [{"frequency", "matrix" | "value"}]}
FourierLoop loop_from_json(const json& j);
json to_json(const FourierLoop& l);

/// {"gloop": loop} | {"frame": loop} | {"diagonal": [j_1, ..., j_n]}
GLoop condition_from_json(const json& j);

json to_json(const TaylorDisk& f);
json to_json(const PartialIndexReport& r);
json to_json(const DoubleReport& r);
json to_json(const PlaneCurveReport& r);

/// {"grid": {"radial", "angular"}, "terms": [{"component", "z_power",
/// "zbar_power", "coeff"}]}: density as a polynomial in z and conj(z).
RHSForm rhs_from_json(const json& j, Eigen::Index dim);

PerturbationSpec perturbation_from_json(const json& j, int m);
json to_json(const PerturbationSpec& p);
GridSpec grid_from_json(const json& j);
json to_json(const GridSpec& g);
NewtonOptions newton_from_json(const json& j);
json to_json(const NewtonOptions& o);

json to_json(const ChartNode& node);
ChartNode chart_node_from_json(const json& j, int m);

/// Writes chart.json, nodes/node_XXXXX.json and summary.csv under dir.
void save_chart(const ModuliChart& chart, const std::filesystem::path& dir);
ModuliChart load_chart(const std::filesystem::path& dir);

json to_json(const IncidenceFamily& fam);
json to_json(const UnperturbedDiagnostics& d);

json read_json_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace holodisk::cli
