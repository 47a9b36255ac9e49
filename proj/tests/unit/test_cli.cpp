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


#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "holodisk/cli/commands.hpp"
#include "holodisk/cli/json_io.hpp"
#include "holodisk/errors.hpp"

using namespace holodisk;
using namespace holodisk::cli;
namespace fs = std::filesystem;

namespace {

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / ("holodisk_test_" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

void write(const std::string& path, const std::string& text) {
  std::ofstream(path) << text;
}

struct Run {
  int code;
  std::string out, err;
};

Run invoke(RunConfig cfg) {
  std::ostringstream out, err;
  const int code = run(cfg, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST_CASE("cli indices on diag(e^it, e^it)") {
  TempDir d("indices");
  write(d.file("in.json"), R"({"version": 1, "condition": {"diagonal": [1, 1]}})");
  const auto r = invoke({"indices", d.file("in.json"), d.file("out.json"), {}, {}, d.file("scan.csv"), {}});
  REQUIRE(r.code == kOk);
  const json rep = read_json_file(d.file("out.json"));
  CHECK(rep.at("report").at("indices") == json::array({1, 1}));
  CHECK(rep.at("report").at("regular") == true);
  CHECK(rep.at("report").at("h0") == 4);
  CHECK(fs::exists(d.file("scan.csv")));
}

TEST_CASE("cli indices from an explicit G loop") {
  TempDir d("gloop");
  write(d.file("in.json"),
        R"({"version": 1, "condition": {"gloop": {"rows": 1, "terms": [{"frequency": -2, "value": [1, 0]}]}}})");
  const auto r = invoke({"indices", d.file("in.json"), d.file("out.json"), {}, {}, "", {}});
  REQUIRE(r.code == kOk);
  const json rep = read_json_file(d.file("out.json"));
  CHECK(rep.at("report").at("indices") == json::array({-2}));
  CHECK(rep.at("report").at("regular") == false);
}

TEST_CASE("cli plane-curve table") {
  TempDir d("plane");
  RunConfig cfg{"plane-curve", "", d.file("pc.csv"), {}, {}, "", std::make_pair(1, 5)};
  REQUIRE(invoke(cfg).code == kOk);
  const auto rows = lines(slurp(d.file("pc.csv")));
  REQUIRE(rows.size() == 6);
  CHECK(rows[0].rfind("d,two_component_dim,connected_dim", 0) == 0);
  for (int dgr = 1; dgr <= 5; ++dgr) {
    const std::string prefix =
        std::to_string(dgr) + "," + std::to_string(dgr * (dgr + 3) / 2) + "," + std::to_string(dgr * (dgr + 3)) + ",";
    CHECK(rows[static_cast<std::size_t>(dgr)].rfind(prefix, 0) == 0);
  }
}

TEST_CASE("cli double from indices") {
  TempDir d("double");
  write(d.file("in.json"), R"({"version": 1, "indices": [1, 1]})");
  const auto r = invoke({"double", d.file("in.json"), d.file("out.json"), {}, {}, "", {}});
  REQUIRE(r.code == kOk);
  const json rep = read_json_file(d.file("out.json"));
  CHECK(rep.at("double").at("degree") == 2);
  CHECK(rep.at("double").at("h0") == 4);
}

TEST_CASE("cli solve: solvable and obstructed") {
  TempDir d("solve");
  write(d.file("ok.json"), R"({"version": 1, "condition": {"diagonal": [1]},
    "rhs": {"grid": {"radial": 12, "angular": 32},
            "terms": [{"component": 0, "z_power": 1, "zbar_power": 1, "coeff": [1, 0.5]}]}})");
  auto r = invoke({"solve", d.file("ok.json"), d.file("ok_out.json"), {}, {}, "", {}});
  REQUIRE(r.code == kOk);
  CHECK(read_json_file(d.file("ok_out.json")).at("status") == "solved");
  write(d.file("ob.json"), R"({"version": 1, "condition": {"diagonal": [-2]},
    "rhs": {"grid": {"radial": 12, "angular": 32}, "terms": [{"component": 0, "coeff": [0, 1]}]}})");
  r = invoke({"solve", d.file("ob.json"), d.file("ob_out.json"), {}, {}, "", {}});
  REQUIRE(r.code == kOk);
  const json ob = read_json_file(d.file("ob_out.json"));
  CHECK(ob.at("status") == "obstructed");
  CHECK(ob.at("dimension") == 1);
}

TEST_CASE("cli sweep at epsilon 0, verify, incidence, determinism") {
  TempDir d("sweep");
  write(d.file("sweep.json"), R"({"version": 1, "m": 1,
    "perturbation": {"preset": "cubic_harmonic", "epsilon": 0.0},
    "grid": {"kind": "sphere", "longitude": 16, "latitude": 8}, "threads": 1})");
  const auto a = invoke({"sweep", d.file("sweep.json"), d.file("chart_a"), {}, {}, "", {}});
  REQUIRE(a.code == kOk);
  const auto b = invoke({"sweep", d.file("sweep.json"), d.file("chart_b"), {}, {}, "", {}});
  REQUIRE(b.code == kOk);
  CHECK(slurp(d.file("chart_a/chart.json")) == slurp(d.file("chart_b/chart.json")));
  CHECK(slurp(d.file("chart_a/summary.csv")) == slurp(d.file("chart_b/summary.csv")));
  CHECK(slurp(d.file("chart_a/nodes/node_00077.json")) == slurp(d.file("chart_b/nodes/node_00077.json")));

  const auto v = invoke({"verify", d.file("chart_a"), d.file("verify.json"), {}, {}, "", {}});
  CHECK(v.code == kOk);
  CHECK(read_json_file(d.file("verify.json")).at("diagnostics").at("passed") == true);

  // reload round trip
  const ModuliChart chart = load_chart(d.file("chart_a"));
  CHECK(chart.nodes.size() == 128);
  CHECK(verify_unperturbed(chart).passed);

  write(d.file("inc.json"), R"({"version": 1, "chart": "chart_a", "x": [0.0, 0.6, 0.8]})");
  const auto inc = invoke({"incidence", d.file("inc.json"), d.file("inc_out.json"), {}, {}, d.file("inc.csv"), {}});
  REQUIRE(inc.code == kOk);
  const auto rows = lines(slurp(d.file("inc.csv")));
  REQUIRE(rows.size() >= 4);
  // closed polyline: the last row repeats the first member
  const auto strip = [](const std::string& s) { return s.substr(s.find(',')); };
  CHECK(strip(rows[1]) == strip(rows.back()));
}

TEST_CASE("cli exit codes") {
  TempDir d("codes");
  CHECK(invoke({"indices", d.file("missing.json"), "", {}, {}, "", {}}).code == kConfigError);
  write(d.file("nover.json"), R"({"condition": {"diagonal": [1]}})");
  const auto nv = invoke({"indices", d.file("nover.json"), "", {}, {}, "", {}});
  CHECK(nv.code == kConfigError);
  CHECK(nv.err.find("version") != std::string::npos);
  write(d.file("bad.json"), R"({"version": 1, "condition": {"gloop": {"terms": [{"frequency": 0, "value": [2, 0]}]}}})");
  const auto bad = invoke({"indices", d.file("bad.json"), "", {}, {}, "", {}});
  CHECK(bad.code == kConfigError);
  CHECK_FALSE(bad.err.empty());
  write(d.file("trunc.json"), R"({"version": 1, "condition": {"diagonal": [6]}})");
  const auto tr = invoke({"indices", d.file("trunc.json"), "", {}, 2, "", {}});
  CHECK(tr.code == kNumericalFailure);
  CHECK(tr.err.find("trunc") != std::string::npos);
  CHECK(invoke({"indices", d.file("trunc.json"), "", -1.0, {}, "", {}}).code == kConfigError);
  CHECK(invoke({"frobnicate", "", "", {}, {}, "", {}}).code == kUsage);

  // a sweep whose Newton budget is zero cannot converge
  write(d.file("sweep.json"), R"({"version": 1, "m": 1,
    "perturbation": {"preset": "cubic_harmonic", "epsilon": 0.05},
    "grid": {"kind": "nodes", "nodes": [{"u": [0.6666666666666666, -0.3333333333333333, 0.6666666666666666],
                                         "v": [0.4472135954999579, 0.8944271909999159, 0.0]}]},
    "newton": {"max_iterations": 0, "continuation_steps": 1}})");
  const auto sw = invoke({"sweep", d.file("sweep.json"), d.file("chart"), {}, {}, "", {}});
  CHECK(sw.code == kNumericalFailure);
  CHECK(sw.err.find("acceptance") != std::string::npos);
  CHECK(fs::exists(d.file("chart/chart.json")));

  // verify rejects a perturbed chart as a configuration error
  write(d.file("sweep2.json"), R"({"version": 1, "m": 1,
    "perturbation": {"preset": "cubic_harmonic", "epsilon": 0.05},
    "grid": {"kind": "sphere", "longitude": 2, "latitude": 1}})");
  REQUIRE(invoke({"sweep", d.file("sweep2.json"), d.file("chart2"), {}, {}, "", {}}).code == kOk);
  CHECK(invoke({"verify", d.file("chart2"), "", {}, {}, "", {}}).code == kConfigError);

  // a tampered unperturbed chart is an invariant violation
  write(d.file("sweep3.json"), R"({"version": 1, "m": 1,
    "perturbation": {"preset": "cubic_harmonic", "epsilon": 0.0},
    "grid": {"kind": "sphere", "longitude": 4, "latitude": 2}})");
  REQUIRE(invoke({"sweep", d.file("sweep3.json"), d.file("chart3"), {}, {}, "", {}}).code == kOk);
  ModuliChart tampered = load_chart(d.file("chart3"));
  REQUIRE(tampered.nodes[1].disk.has_value());
  tampered.nodes[1].disk->a(2) += 0.01;
  save_chart(tampered, d.file("chart3"));
  const auto ver = invoke({"verify", d.file("chart3"), "", {}, {}, "", {}});
  CHECK(ver.code == kInvariantViolation);
  CHECK(ver.err.find("tolerance") != std::string::npos);
}

TEST_CASE("plot data") {
  const auto r = partial_indices(GLoop(FourierLoop::scalar({{3, 1.0}})));
  const std::string csv = emit_plot_data(&r, "scan");
  const auto rows = lines(csv);
  CHECK(rows[0].rfind("m,N,second_difference", 0) == 0);
  // the second difference at m is the multiplicity of index m - 1
  bool found = false;
  for (const auto& row : rows) {
    if (row.rfind("4,", 0) == 0) {
      std::istringstream in(row);
      std::string m, n, sd;
      std::getline(in, m, ',');
      std::getline(in, n, ',');
      std::getline(in, sd, ',');
      CHECK(sd == "1");
      found = true;
    }
  }
  CHECK(found);

  ModuliChart empty;
  const auto e = lines(emit_plot_data(&empty, "chart"));
  CHECK(e.size() == 1);
  CHECK_THROWS_AS(emit_plot_data(&r, "histogram"), InvalidInput);
  CHECK_THROWS_AS(emit_plot_data(&r, "chart"), InvalidInput);
}

TEST_CASE("json round trips") {
  const FourierLoop l = FourierLoop::diagonal_monomials(std::vector<int>{1, -2});
  const FourierLoop back = loop_from_json(to_json(l));
  CHECK((back.coeff_or_zero(1) - l.coeff_or_zero(1)).norm() == 0.0);
  CHECK((back.coeff_or_zero(-2) - l.coeff_or_zero(-2)).norm() == 0.0);
  CHECK(complex_from_json(to_json(Complex(0.25, -3.0))) == Complex(0.25, -3.0));
  CHECK_THROWS_AS(complex_from_json(json::array({1, 2, 3})), InvalidInput);
  GridSpec g;
  g.kind = GridKind::sphere_pair;
  g.longitude = 3;
  const GridSpec g2 = grid_from_json(to_json(g));
  CHECK(g2.kind == GridKind::sphere_pair);
  CHECK(g2.longitude == 3);
}
