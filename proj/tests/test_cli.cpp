// Process-level tests of the quasih binary: byte determinism, schema
// conformance, exit codes, config-file parity. The binary location comes from
// QUASIH_BIN and the schema document from QUASIH_SCHEMA (both set by ctest).

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "doctest.h"
#include "support/oracles.hpp"
#include "support/proc.hpp"
#include "support/schema_check.hpp"

using nlohmann::json;
using proc::run_cli;

namespace {

json parse_json_run(const std::string& args) {
  auto result = run_cli(args);
  REQUIRE(result.exit_code == 0);
  return json::parse(result.output);
}

json load_schema() {
  std::ifstream in(proc::schema_path());
  REQUIRE(in.good());
  return json::parse(in);
}

std::string first_line(const std::string& text) {
  return text.substr(0, text.find('\n'));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("quasih_cli_test_" + name);
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE(in.good());
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

const double kPi = 3.14159265358979323846;

}  // namespace

TEST_CASE("identical configs produce identical bytes") {
  const std::vector<std::string> invocations = {
      "metric --alpha 0.5235987755982988 --u 0.2 --format json",
      "metric --alpha 0.5235987755982988 --u 0.2 --format csv",
      "family --alpha -0.9 --a 1.3 --format json",
      "evolve --alpha 0.6 --t 10,0.1,1 --cpt --format csv",
      "signal --alpha-grid 0.1:1.2:4 --u-grid -0.2:0.2:3 --t 0.5,2 --mode both --format json",
      "ep-scan --alpha-grid 0:1.5707963267948966:7 --format csv",
  };
  for (const std::string& args : invocations) {
    CAPTURE(args);
    auto first = run_cli(args);
    auto second = run_cli(args);
    CHECK(first.exit_code == 0);
    CHECK(second.exit_code == 0);
    CHECK(first.output == second.output);
    CHECK(!first.output.empty());
  }
}

TEST_CASE("every command emits schema-conforming JSON") {
  const json schema = load_schema();
  const std::vector<std::string> invocations = {
      "metric --alpha 0.5 --u 0.1",
      "metric --alpha 0.9 --cpt",
      "family --alpha 0.5",
      "evolve --alpha 0.6 --t 0.5,1 --state '0.6,0;0,0.8'",
      "signal --alpha 0.8 --t 0.1,1 --mode both",
      "signal --alpha 0.8 --cpt --action measure --mode naive",
      "signal --alpha-grid 0.1:0.9:3 --u-grid 0:0.2:2 --t 1 --mode corrected",
      "ep-scan --alpha-grid 0:1.5707963267948966:5",
  };
  for (const std::string& args : invocations) {
    CAPTURE(args);
    json doc = parse_json_run(args);
    auto errors = schema_check::validate(schema, doc);
    for (const std::string& e : errors) {
      CAPTURE(e);
      CHECK(false);
    }
    CHECK(errors.empty());
  }
}

TEST_CASE("exit codes follow the documented table") {
  struct Case {
    const char* args;
    int code;
  };
  const std::vector<Case> cases = {
      {"metric --alpha 0.5 --u 2.0", 2},                              // positivity violated
      {"metric --alpha 1.5707963267948966 --cpt", 3},                 // CPT fixing at the EP
      {"metric --alpha 0.5 --format xml", 2},                         // unknown format
      {"signal --alpha 0.3 --t 1 --mode bogus", 2},                   // unknown mode
      {"ep-scan --alpha-grid 1.5:0.5:10", 2},                         // descending range
      {"metric --alpha 0.5 --output /nonexistent-dir/quasih.json", 4},
      {"evolve --alpha 0.5 --t 1 --state '0,0;0,0'", 2},              // zero state
      {"signal --alpha 0.3 --t 1 --state '1,0;0,0'", 2},              // wrong dimension
      {"metric --alpha 0.5 --config /nonexistent-dir/quasih.ini", 4},
      {"family --alpha 1.5707963267948966", 3},                       // family at the EP
      {"frobnicate --alpha 0.5", 2},                                  // unknown subcommand
      {"evolve --alpha 0.5", 2},                                      // missing time grid
      {"signal --alpha 0.4 --cpt --u-grid 0:0.2:3 --t 1", 2},         // cpt fixes u already
      {"metric --u 0.1", 2},                                          // alpha missing
      {"signal --alpha 0.3 --action measure --t 1", 2},               // t with a measurement
      {"metric --alpha 0.5 --alpha-deg 30", 2},                       // both angle flags
  };
  for (const Case& c : cases) {
    CAPTURE(c.args);
    CHECK(run_cli(c.args).exit_code == c.code);
  }
  CHECK(run_cli("metric --alpha 0.5").exit_code == 0);
  CHECK(run_cli("--help").exit_code == 0);
}

TEST_CASE("config file reproduces the flag run byte for byte") {
  const auto cfg = temp_file("metric.ini");
  {
    std::ofstream out(cfg);
    out << "alpha=0.5235987755982988\n" << "u=0.2\n" << "format=json\n";
  }
  auto from_flags = run_cli("metric --alpha 0.5235987755982988 --u 0.2 --format json");
  auto from_config = run_cli("metric --config " + cfg.string());
  CHECK(from_flags.exit_code == 0);
  CHECK(from_config.exit_code == 0);
  CHECK(from_flags.output == from_config.output);

  const auto cfg2 = temp_file("signal.ini");
  {
    std::ofstream out(cfg2);
    out << "alpha=0.7\n" << "cpt=true\n" << "t=1.0\n" << "mode=both\n";
  }
  auto signal_flags = run_cli("signal --alpha 0.7 --cpt --t 1.0 --mode both");
  auto signal_config = run_cli("signal --config " + cfg2.string());
  CHECK(signal_flags.exit_code == 0);
  CHECK(signal_config.exit_code == 0);
  CHECK(signal_flags.output == signal_config.output);

  std::filesystem::remove(cfg);
  std::filesystem::remove(cfg2);
}

TEST_CASE("file output matches stdout output") {
  const auto path = temp_file("out.json");
  auto to_stdout = run_cli("metric --alpha 0.4 --u -0.3");
  auto to_file = run_cli("metric --alpha 0.4 --u -0.3 --output " + path.string());
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.output.empty());
  CHECK(slurp(path) == to_stdout.output);
  std::filesystem::remove(path);
}

TEST_CASE("CSV output always carries the documented header") {
  CHECK(first_line(run_cli("metric --alpha 0.5 --format csv").output) ==
        "s,alpha,a,u,cpt,theta_00_re,theta_00_im,theta_01_re,theta_01_im,theta_10_re,"
        "theta_10_im,theta_11_re,theta_11_im,eig_min,eig_max,residual,condition_number");
  CHECK(first_line(run_cli("evolve --alpha 0.5 --t 1 --format csv").output) ==
        "s,alpha,a,u,cpt,t,s_norm,f_norm");
  CHECK(first_line(run_cli("signal --alpha 0.5 --t 1 --format csv").output) ==
        "s,a,cpt,action,alpha,u,t,mode,magnitude");
  CHECK(first_line(run_cli("ep-scan --alpha-grid 0:1:3 --format csv").output) ==
        "s,a,u,alpha,min_metric_eigenvalue,metric_condition_number,eigenvector_overlap");
  CHECK(first_line(run_cli("family --alpha 0.5 --format csv").output) ==
        "s,alpha,a,u,cpt,eig_min,eig_max,ray0_00_re,ray0_00_im,ray0_01_re,ray0_01_im,"
        "ray0_10_re,ray0_10_im,ray0_11_re,ray0_11_im,ray1_00_re,ray1_00_im,ray1_01_re,"
        "ray1_01_im,ray1_10_re,ray1_10_im,ray1_11_re,ray1_11_im,coeff_0,coeff_1,"
        "reconstruction_error");
}

TEST_CASE("Hermitian limit: both signaling modes vanish") {
  json doc = parse_json_run("signal --alpha 0 --u 0 --t 1 --mode both");
  REQUIRE(doc["rows"].size() == 2);
  for (const json& row : doc["rows"]) {
    CHECK(std::abs(row["magnitude"].get<double>()) <= 1e-12);
  }
}

TEST_CASE("CPT metric values and naive signal magnitude from the CLI") {
  json doc = parse_json_run("metric --alpha 1.0471975511965976 --cpt");
  const double r3 = 1.7320508075688772;
  CHECK(std::abs(doc["theta"][0][0]["re"].get<double>() - 2.0) < 1e-12);
  CHECK(std::abs(doc["theta"][0][1]["im"].get<double>() + r3) < 1e-12);
  CHECK(std::abs(doc["theta"][1][0]["im"].get<double>() - r3) < 1e-12);
  CHECK(std::abs(doc["params"]["a"].get<double>() - std::sqrt(2.0)) < 1e-12);
  CHECK(doc["params"]["cpt"].get<bool>());

  // The naive magnitude from the binary agrees with the closed-form oracle.
  json sig = parse_json_run("signal --alpha 0.7854 --cpt --t 1 --mode naive");
  REQUIRE(sig["rows"].size() == 1);
  const double got = sig["rows"][0]["magnitude"].get<double>();
  CHECK(got > 0.1);
  CHECK(std::abs(got - oracles::naive_evolution_signal(1.0, 0.7854, 1.0)) < 1e-10);
}

TEST_CASE("rows are ordered by their grid coordinates") {
  json doc = parse_json_run("evolve --alpha 0.6 --t 10,0.1,1");
  REQUIRE(doc["rows"].size() == 3);
  CHECK(doc["rows"][0]["t"].get<double>() == 0.1);
  CHECK(doc["rows"][1]["t"].get<double>() == 1.0);
  CHECK(doc["rows"][2]["t"].get<double>() == 10.0);

  json sig = parse_json_run(
      "signal --alpha-grid 0.2:0.8:2 --u-grid -0.1:0.1:2 --t 2,0.5 --mode both");
  REQUIRE(sig["rows"].size() == 2 * 2 * 2 * 2);
  double prev_alpha = -1e300;
  for (std::size_t k = 0; k + 1 < sig["rows"].size(); ++k) {
    const json& a = sig["rows"][k];
    const json& b = sig["rows"][k + 1];
    auto key = [](const json& r) {
      return std::tuple<double, double, double, std::string>(
          r["alpha"].get<double>(), r["u"].get<double>(), r["t"].get<double>(),
          r["mode"].get<std::string>());
    };
    CHECK(key(a) < key(b));
    prev_alpha = a["alpha"].get<double>();
  }
  (void)prev_alpha;
}

TEST_CASE("ep-scan reaches the exceptional point and reports the divergence") {
  json doc = parse_json_run("ep-scan --alpha-grid 0:1.5707963267948966:5");
  REQUIRE(doc["rows"].size() == 5);
  const json& last = doc["rows"][4];
  // At the end point the metric has collapsed: zero floor, no condition number.
  CHECK(last["min_metric_eigenvalue"].get<double>() <= 1e-12);
  CHECK(last["metric_condition_number"].is_null());
  CHECK(last["eigenvector_overlap"].get<double>() > 1.0 - 1e-8);
  // Interior rows are finite and healthy.
  const json& first = doc["rows"][0];
  CHECK(first["metric_condition_number"].is_number());
  CHECK(std::abs(first["metric_condition_number"].get<double>() - 1.0) < 1e-12);

  // CSV spells the divergence as inf.
  auto csv = run_cli("ep-scan --alpha-grid 0:1.5707963267948966:5 --format csv");
  CHECK(csv.output.find("inf") != std::string::npos);
}

TEST_CASE("family output exposes the coefficient map") {
  json doc = parse_json_run("family --alpha 0.5 --a 1.2 --u 0.3");
  const double ca = std::cos(0.5);
  const double c_minus = 1.2 * 1.2 * (1.0 - 0.3 / ca);
  const double c_plus = 1.2 * 1.2 * (1.0 + 0.3 / ca);
  CHECK(std::abs(doc["coefficients"][0].get<double>() - c_minus) < 1e-10);
  CHECK(std::abs(doc["coefficients"][1].get<double>() - c_plus) < 1e-10);
  CHECK(doc["reconstruction_error"].get<double>() < 1e-10);
  CHECK(doc["eigenvalues"][0].get<double>() < 0.0);
  CHECK(doc["eigenvalues"][1].get<double>() > 0.0);
}

TEST_CASE("alpha-deg converts at parse time") {
  auto rad = run_cli("metric --alpha 0.5235987755982988");
  auto deg = run_cli("metric --alpha-deg 30");
  CHECK(rad.exit_code == 0);
  CHECK(deg.exit_code == 0);
  // 30 degrees equals pi/6 up to the last-ulp conversion; entries match 1e-15.
  json a = json::parse(rad.output);
  json b = json::parse(deg.output);
  CHECK(std::abs(a["theta"][0][1]["im"].get<double>() -
                 b["theta"][0][1]["im"].get<double>()) < 1e-15);
  (void)kPi;
}
