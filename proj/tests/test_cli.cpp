#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include "lspec/json_io.hpp"

using namespace lspec;
using nlohmann::json;

namespace {

std::string write_temp(const std::string& name, const json& j) {
  const std::string path = "/tmp/lspec_cli_test_" + name + ".json";
  std::ofstream out(path);
  out << j.dump();
  return path;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
};

RunResult run_cli(const std::string& args) {
  const char* bin = std::getenv("LSPEC_CLI");
  REQUIRE_MESSAGE(bin != nullptr, "LSPEC_CLI must point at the binary");
  RunResult r;
  FILE* p = popen((std::string(bin) + " " + args + " 2>/dev/null").c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

json identity_matrix() {
  return {{"matrix", {{1.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}}}};
}

json transpose_operator() {
  json rows = json::array();
  for (int r = 0; r < 9; ++r) rows.push_back(std::vector<double>(9, 0.0));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) rows[3 * j + i][3 * i + j] = 1.0;
  return {{"operator", rows}, {"basis", kOperatorBasis}};
}

}  // namespace

TEST_CASE("matrix parsing accepts the documented shape only") {
  const Mat3 A = parse_matrix_file(
      json{{"matrix", {{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}, {7.0, 8.0, 9.0}}}});
  CHECK(A.m[0][1] == 2.0);
  CHECK(A.m[2][2] == 9.0);

  CHECK_THROWS_AS(parse_matrix_file(json{{"matrix", {{1.0, 2.0}, {3.0, 4.0}}}}),
                  JsonFormatError);
  CHECK_THROWS_AS(parse_matrix_file(json{{"wrong", 1}}), JsonFormatError);
  CHECK_THROWS_AS(
      parse_matrix_file(
          json{{"matrix", {{1.0, 2.0, "x"}, {0, 0, 0}, {0, 0, 0}}}}),
      JsonFormatError);
  json inf_mat = identity_matrix();
  inf_mat["matrix"][0][0] = "1e999";  // not a finite number
  CHECK_THROWS_AS(parse_matrix_file(inf_mat), JsonFormatError);
}

TEST_CASE("operator parsing checks shape and basis") {
  const LinearMap3 T = parse_operator_file(transpose_operator());
  CHECK(T.m[1][3] == 1.0);  // E12 -> E21

  json wrong_basis = transpose_operator();
  wrong_basis["basis"] = "rowmajor";
  CHECK_THROWS_AS(parse_operator_file(wrong_basis), JsonFormatError);

  json short_rows = transpose_operator();
  short_rows["operator"].erase(8);
  CHECK_THROWS_AS(parse_operator_file(short_rows), JsonFormatError);

  CHECK_THROWS_AS(parse_operator_file(json{{"operator", 5}}), JsonFormatError);
}

TEST_CASE("report serialization round trips") {
  Spectrum s;
  s.points.push_back({0.5, true, false, {}, {}});
  s.points.push_back({1.25, false, true, {}, {}});
  s.intervals.push_back({2.0, 3.0});
  const json r = spectrum_report(s);
  CHECK(r["infinite"] == true);
  CHECK(r["points"][0]["value"] == 0.5);
  CHECK(r["points"][0]["interior"] == true);
  CHECK(r["points"][1]["boundary"] == true);
  CHECK(r["intervals"][0]["lo"] == 2.0);
  CHECK(json::parse(r.dump()).dump() == r.dump());

  Spectrum empty;
  CHECK(spectrum_report(empty)["infinite"] == false);

  const json m = matrix_to_json(Mat3::unit(2, 0));
  CHECK((parse_matrix_file(m) - Mat3::unit(2, 0)).max_abs() == 0.0);
  const json op = operator_to_json(parse_operator_file(transpose_operator()));
  CHECK(op["basis"] == kOperatorBasis);
  CHECK(op == transpose_operator());
}

TEST_CASE("cli spectrum on the identity") {
  const auto path = write_temp("id", identity_matrix());
  const auto r = run_cli("spectrum --input " + path);
  CHECK(r.exit_code == 0);
  const json out = json::parse(r.out);
  REQUIRE(out["points"].size() == 1);
  CHECK(out["points"][0]["value"] == doctest::Approx(1.0));
  CHECK(out["points"][0]["boundary"] == true);
  CHECK(out["infinite"] == false);
}

TEST_CASE("cli oracle and compare agree on a structured matrix") {
  const json m{{"matrix", {{0.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}}}};
  const auto path = write_temp("e31", m);
  const auto probe = run_cli("oracle --input " + path + " --theta-steps 20000");
  CHECK(probe.exit_code == 0);
  const json out = json::parse(probe.out);
  CHECK(out["infinite"] == true);
  REQUIRE(out["intervals"].size() == 1);
  CHECK(double(out["intervals"][0]["hi"]) == doctest::Approx(0.5).epsilon(1e-5));

  const auto cmp = run_cli("compare --input " + path + " --theta-steps 20000");
  CHECK(cmp.exit_code == 0);
  const json cj = json::parse(cmp.out);
  CHECK(double(cj["diff"]["hausdorff"]) <= 1e-6);
}

TEST_CASE("cli rejects malformed input with exit code 2") {
  const std::string path = "/tmp/lspec_cli_test_bad.json";
  std::ofstream(path) << "{not json";
  CHECK(run_cli("spectrum --input " + path).exit_code == 2);
  CHECK(run_cli("spectrum").exit_code == 2);                  // missing --input
  CHECK(run_cli("spectrum --input /tmp/does-not-exist.json").exit_code == 2);
  CHECK(run_cli("no-such-subcommand").exit_code == 2);
}

TEST_CASE("cli preserver-check and recover-q on the transpose operator") {
  const auto path = write_temp("transpose", transpose_operator());
  const auto check = run_cli("preserver-check --operator " + path);
  CHECK(check.exit_code == 1);
  const json cj = json::parse(check.out);
  CHECK(cj["is_preserver"] == false);
  CHECK(cj.contains("witness"));

  const auto rec = run_cli("recover-q --operator " + path);
  CHECK(rec.exit_code == 1);
  CHECK(json::parse(rec.out).contains("error"));

  // identity operator is canonical with Q = I
  json id_op = transpose_operator();
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) id_op["operator"][i][j] = i == j ? 1.0 : 0.0;
  const auto idp = write_temp("id_op", id_op);
  const auto ok = run_cli("preserver-check --operator " + idp);
  CHECK(ok.exit_code == 0);
  const json oj = json::parse(ok.out);
  CHECK(oj["is_preserver"] == true);
  CHECK(double(oj["q"][0][0]) == doctest::Approx(1.0));

  const auto qrec = run_cli("recover-q --operator " + idp);
  CHECK(qrec.exit_code == 0);
  CHECK(double(json::parse(qrec.out)["q"][1][1]) == doctest::Approx(1.0));
}

TEST_CASE("cli battery is deterministic in the seed") {
  const auto a = run_cli("battery --seed 5 --count 31");
  const auto b = run_cli("battery --seed 5 --count 31");
  const auto c = run_cli("battery --seed 6 --count 31");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out != c.out);
  CHECK(json::parse(a.out)["matrices"].size() == 31);
}
