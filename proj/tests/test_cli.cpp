#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "edgroups/commands.hpp"
#include "edgroups/io.hpp"

using namespace edg;
namespace fs = std::filesystem;

namespace {

std::string write_temp(const std::string& name, const std::string& text) {
  const fs::path dir = fs::temp_directory_path() / "edgroups_test_cli";
  fs::create_directories(dir);
  const fs::path p = dir / name;
  std::ofstream(p) << text;
  return p.string();
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(EDG_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("matrix parsing") {
  const Matrix m = parse_matrix(R"({"n": 2, "data": [[1, 2], [3, 4.5]]})");
  CHECK(m(0, 1) == 2.0);
  CHECK(m(1, 1) == 4.5);
  CHECK_THROWS_AS(parse_matrix(R"({"n": 3, "data": [[1, 2], [3, 4]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n": 2, "data": [[1, 2], [3]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix(R"({"n": 1, "data": [["x"]]})"), ParseError);
  CHECK_THROWS_AS(parse_matrix("not json"), ParseError);
  const CMatrix z = parse_complex_matrix(R"({"n": 1, "re": [[1]], "im": [[-2]]})");
  CHECK(z(0, 0) == Complex(1, -2));
}

TEST_CASE("weight set parsing") {
  const auto a = parse_weightset(R"({"m": 1, "weights": [-3, -1, 1, 3]})");
  CHECK(a.weights.weights.size() == 4);
  CHECK((a.weights.multiplicities == std::vector<int>{1, 1, 1, 1}));
  CHECK(a.lattice_index == 1);
  const auto b = parse_weightset(R"({"m": 2, "weights": [[1, 0], [-1, 0]], "mults": [2, 2], "lattice_index": 2})");
  CHECK((b.weights.weights[1] == std::vector<int>{-1, 0}));
  CHECK(b.lattice_index == 2);
  CHECK_THROWS_AS(parse_weightset(R"({"m": 2, "weights": [[1]]})"), ParseError);
}

TEST_CASE("digest is stable") {
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(fnv1a_hex("a") == "af63dc4c8601ec8c");
}

TEST_CASE("nearest command") {
  const std::string swap = write_temp("swap.json", R"({"n": 2, "data": [[0, 2], [1, 0]]})");
  const auto r = cmd_nearest("orthogonal", swap, std::nullopt, {});
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.report);
  const Matrix& x = *r.report->results.front().x;
  CHECK(std::abs(x(0, 1) - 1) < 1e-12);
  CHECK(std::abs(x(1, 0) - 1) < 1e-12);
  CHECK(std::abs(x(0, 0)) < 1e-12);

  const std::string sl = write_temp("sl.json", R"({"n": 2, "data": [[2, 0], [0, 0.5]]})");
  const auto s = cmd_nearest("sl", sl, std::nullopt, {});
  REQUIRE(s.exit_code == 0);
  CHECK(s.report->results.front().distance_sq < 1e-16);

  CHECK(cmd_nearest("symplectic", swap, std::nullopt, {}).exit_code == 4);
  CHECK(cmd_nearest("torus", swap, std::nullopt, {}).exit_code == 4);
  CHECK(cmd_nearest("lorentz", swap, std::nullopt, {}).exit_code == 2);
  CHECK(cmd_nearest("orthogonal", write_temp("bad.json", "{"), std::nullopt, {}).exit_code == 2);
  CHECK(cmd_nearest("orthogonal", "/nonexistent/file.json", std::nullopt, {}).exit_code == 2);
  const std::string id = write_temp("id.json", R"({"n": 2, "data": [[1, 0], [0, 1]]})");
  CHECK(cmd_nearest("orthogonal", id, std::nullopt, {}).exit_code == 3);
  const std::string zero = write_temp("zero.json", R"({"n": 2, "data": [[0, 0], [0, 0]]})");
  CHECK(cmd_nearest("sl", zero, std::nullopt, {}).exit_code == 3);
  CHECK(cmd_nearest("sl", sl, std::string("both"), {}).exit_code == 2);

  const std::string unitary = write_temp("u.json", R"({"n": 1, "re": [[2]], "im": [[0]]})");
  const auto u = cmd_nearest("unitary", unitary, std::nullopt, {});
  REQUIRE(u.exit_code == 0);
  CHECK(u.report->results.front().distance_sq == doctest::Approx(2.0));
}

TEST_CASE("critical command") {
  const std::string m3 = write_temp("m3.json", R"({"n": 3, "data": [[0.3, -0.8, 0.1], [0.5, 0.2, -0.7], [0.9, 0.4, 0.6]]})");
  const auto o = cmd_critical("orthogonal", m3, {});
  REQUIRE(o.exit_code == 0);
  CHECK(o.report->results.size() == 8);
  const std::string m2 = write_temp("m2.json", R"({"n": 2, "data": [[1, 2], [3, 4.5]]})");
  const auto s = cmd_critical("sl-pm", m2, {});
  REQUIRE(s.exit_code == 0);
  CHECK(s.report->results.size() <= 8);
  for (const auto& p : s.report->results) CHECK(p.c.has_value());
  const auto& values = s.report->values;
  CHECK(std::find(values.begin(), values.end(), std::pair<std::string, long long>("complex_count", 8)) != values.end());
  GlobalOptions options;
  options.starts = 2000;
  options.seed = 7;
  const auto sp = cmd_critical("symplectic", m2, options);
  REQUIRE(sp.exit_code == 0);
  CHECK(sp.report->results.size() <= 4);
}

TEST_CASE("bkk command") {
  const auto a = cmd_bkk(write_temp("w1.json", R"({"m": 1, "weights": [-3, -1, 1, 3]})"), {});
  REQUIRE(a.exit_code == 0);
  const auto& v = a.report->values;
  CHECK((v[0] == std::pair<std::string, long long>("bound", 6)));
  CHECK((v[2] == std::pair<std::string, long long>("count", 6)));
  const auto cross = cmd_bkk(write_temp("w2.json", R"({"m": 2, "weights": [[1,0],[-1,0],[0,1],[0,-1]]})"), {});
  REQUIRE(cross.exit_code == 0);
  CHECK(cross.report->values[0].second == 4);
  CHECK(cmd_bkk(write_temp("w3.json", R"({"m": 1, "weights": [1, 2]})"), {}).exit_code == 2);
  CHECK(cmd_bkk(write_temp("w4.json",
                           R"({"m": 4, "weights": [[1,0,0,0],[-1,0,0,0],[0,1,0,0],[0,-1,0,0],
                               [0,0,1,0],[0,0,-1,0],[0,0,0,1],[0,0,0,-1]]})"),
                {})
            .exit_code == 4);
}

TEST_CASE("verify command") {
  const auto r = cmd_verify("torus", {});
  CHECK(r.exit_code == 0);
  for (const auto& c : r.report->counts) CHECK(c.observed.has_value());
  CHECK(cmd_verify("sl", {}).exit_code == 0);
  CHECK(cmd_verify("nothing", {}).exit_code == 2);
  // An impossible tolerance makes residual checks fail.
  GlobalOptions strict;
  strict.tol = 1e-300;
  CHECK(cmd_verify("orthogonal", strict).exit_code == 1);
}

TEST_CASE("reports are deterministic and use 17 significant digits") {
  const std::string m2 = write_temp("d2.json", R"({"n": 2, "data": [[1, 2], [3, 4.5]]})");
  GlobalOptions options;
  options.starts = 300;
  const auto a = cmd_critical("symplectic", m2, options);
  const auto b = cmd_critical("symplectic", m2, options);
  CHECK(a.out == b.out);
  RunReport r;
  r.command = "x";
  r.results.push_back(PointSummary{0.1, 1, 1.0 / 3.0, std::nullopt, std::nullopt, std::nullopt});
  const std::string json = to_json(r);
  CHECK(json.find("\"distance_sq\": 0.10000000000000001") != std::string::npos);
  CHECK(json.find("\"residual\": 0.33333333333333331") != std::string::npos);
  CHECK(json.find("elapsed_ms") == std::string::npos);
}

TEST_CASE("binary exit codes") {
  const std::string swap = write_temp("swap.json", R"({"n": 2, "data": [[0, 2], [1, 0]]})");
  CHECK(run_cli("nearest orthogonal " + swap) == 0);
  CHECK(run_cli("nearest symplectic " + swap) == 4);
  CHECK(run_cli("nearest orthogonal /nonexistent.json") == 2);
  CHECK(run_cli("--tol 1e-300 verify unitary") == 1);
  CHECK(run_cli("verify torus") == 0);
  CHECK(run_cli("frobnicate") == 2);
}
