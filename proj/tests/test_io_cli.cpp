#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <random>
#include <string>

#include <json.hpp>

#include "gtare/problem_io.hpp"
#include "support/instances.hpp"

using namespace gtare;
using namespace gtare_tests;
using nlohmann::json;

namespace {

std::string temp_file(const std::string& name) {
  return std::string("/tmp/gtare_test_") + name;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("problem file round trip is exact") {
  std::mt19937 rng(21);
  const GtareProblem p = random_problem(rng, 3, 2, 2, 2, true);
  const std::string path = temp_file("roundtrip.json");
  write_problem(path, p);
  const ProblemFile back = read_problem(path);
  CHECK((back.problem.A - p.A).norm() == 0.0);
  CHECK((back.problem.Q.mat() - p.Q.mat()).norm() == 0.0);
  CHECK((back.problem.R11.mat() - p.R11.mat()).norm() == 0.0);
  CHECK((back.problem.R12 - p.R12).norm() == 0.0);
  CHECK((back.problem.S1 - p.S1).norm() == 0.0);
  for (Index l = 0; l < p.r; ++l) {
    CHECK((back.problem.C[l] - p.C[l]).norm() == 0.0);
    CHECK((back.problem.D1[l] - p.D1[l]).norm() == 0.0);
    CHECK((back.problem.D2[l] - p.D2[l]).norm() == 0.0);
  }
  std::remove(path.c_str());
}

TEST_CASE("unknown fields: strict rejects, lax warns") {
  json j = json::parse(read_file(fixture_path("paper_gtare.json")));
  j["mystery"] = 1;
  const std::string path = temp_file("unknown.json");
  write_file(path, j.dump());
  CHECK_THROWS_WITH_AS(read_problem(path, true),
                       doctest::Contains("unknown field"), Error);
  const ProblemFile lax = read_problem(path, false);
  REQUIRE(lax.warnings.size() == 1);
  CHECK(lax.warnings[0].find("mystery") != std::string::npos);
  std::remove(path.c_str());
}

TEST_CASE("missing and malformed fields are parse errors") {
  json j = json::parse(read_file(fixture_path("paper_gtare.json")));
  j.erase("B1");
  const std::string path = temp_file("missing.json");
  write_file(path, j.dump());
  CHECK_THROWS_WITH_AS(read_problem(path), doctest::Contains("B1"), Error);
  std::remove(path.c_str());

  CHECK_THROWS_WITH_AS(read_problem("/nonexistent/nope.json"),
                       doctest::Contains("ParseError"), Error);
}

TEST_CASE("rank-deficient R(0) is rejected at load") {
  // det R(0) = (-1)(-1) - 1*1 = 0.
  const std::string text = R"({
    "n": 1, "m1": 1, "m2": 1, "r": 1,
    "A": [[-1.0]], "C": [[[0.1]]],
    "B1": [[0.2]], "B2": [[1.0]],
    "D1": [[[0.0]]], "D2": [[[0.0]]],
    "Q": [[1.0]], "S1": [[0.0]], "S2": [[0.0]],
    "R11": [[-1.0]], "R12": [[1.0]], "R22": [[-1.0]]
  })";
  CHECK_THROWS_WITH_AS(parse_problem(text),
                       doctest::Contains("UnsupportedRankDeficientR"), Error);
}

TEST_CASE("fixture embeds the certificate gain") {
  const ProblemFile pf = paper_fixture();
  REQUIRE(pf.L.has_value());
  CHECK(pf.L->rows() == pf.problem.m2);
  CHECK(pf.L->cols() == pf.problem.n);
}

TEST_CASE("cli solve: fixture solves, report and trace are written") {
  const std::string out = temp_file("report.json");
  const std::string trace = temp_file("trace.csv");
  const CliResult res =
      run_cli("solve " + fixture_path("paper_gtare.json") + " --out " + out +
              " --trace " + trace);
  REQUIRE(res.exit_code == 0);
  const json rep = json::parse(read_file(out));
  const MatrixXd printed = paper_printed_p_star();
  for (Index i = 0; i < 3; ++i) {
    for (Index j = 0; j < 3; ++j) {
      CHECK(std::abs(rep["P_star"][i][j].get<double>() - printed(i, j)) <=
            1e-4);
    }
  }
  CHECK(rep["residual_norm"].get<double>() <= 1e-5);

  // Trace CSV: header + outer_iters + 1 rows, Figure-1/2 column layout.
  const std::string csv = read_file(trace);
  const int rows = static_cast<int>(std::count(csv.begin(), csv.end(), '\n'));
  CHECK(rows == rep["outer_iters"].get<int>() + 2);  // header + records
  CHECK(csv.rfind("k,z_norm,residual_norm,z_eig_1,z_eig_2,z_eig_3,"
                  "m_eig_1,m_eig_2,m_eig_3\n", 0) == 0);
  std::remove(out.c_str());
  std::remove(trace.c_str());
}

TEST_CASE("cli residual on the printed solution") {
  const CliResult res =
      run_cli("residual " + fixture_path("paper_gtare.json") + " " +
              fixture_path("paper_p_star.json"));
  REQUIRE(res.exit_code == 0);
  const json j = json::parse(res.out);
  CHECK(j["in_dom_G"].get<bool>());
  CHECK(j["residual_norm"].get<double>() <= 2e-4);
}

TEST_CASE("cli exit codes") {
  // Missing file -> 1.
  CHECK(run_cli("solve /nonexistent/nope.json").exit_code == 1);

  // R22 made indefinite -> solver error 2 with NotInDomain.
  json j = json::parse(read_file(fixture_path("paper_gtare.json")));
  for (auto& row : j["R22"]) {
    for (auto& v : row) v = -v.get<double>();
  }
  const std::string path = temp_file("baddom.json");
  write_file(path, j.dump());
  const CliResult res = run_cli("solve " + path);
  CHECK(res.exit_code == 2);
  CHECK(res.out.find("NotInDomain") != std::string::npos);
  std::remove(path.c_str());

  // Unstable certificate -> 3.
  const std::string lpath = temp_file("unstable_l.json");
  write_file(lpath,
             "[[50,0,0],[0,50,0],[0,0,50]]");
  CHECK(run_cli("certificate " + fixture_path("paper_gtare.json") + " " +
                lpath)
            .exit_code == 3);
  std::remove(lpath.c_str());

  // Embedded (admissible) certificate -> 0.
  CHECK(run_cli("certificate " + fixture_path("paper_gtare.json"))
            .exit_code == 0);

  // Dimension mismatch -> 1.
  const std::string badl = temp_file("badl.json");
  write_file(badl, "[[1,2]]");
  CHECK(run_cli("certificate " + fixture_path("paper_gtare.json") + " " +
                badl)
            .exit_code == 1);
  std::remove(badl.c_str());

  // validate.
  CHECK(run_cli("validate " + fixture_path("paper_gtare.json")).exit_code ==
        0);
  CHECK(run_cli("validate /nonexistent/nope.json").exit_code == 1);
}

TEST_CASE("cli simulate: determinism and zero initial state") {
  const std::string csv1 = temp_file("sim1.csv");
  const std::string csv2 = temp_file("sim2.csv");
  const std::string common =
      "simulate " + fixture_path("paper_gtare.json") + " " +
      fixture_path("paper_p_star.json") +
      " --dt 0.01 --horizon 1 --paths 8 --seed 42 --out ";
  REQUIRE(run_cli(common + csv1).exit_code == 0);
  REQUIRE(run_cli(common + csv2).exit_code == 0);
  const std::string a = read_file(csv1), b = read_file(csv2);
  REQUIRE_FALSE(a.empty());
  CHECK(a == b);  // byte-identical for identical seeds

  const CliResult zero =
      run_cli("simulate " + fixture_path("paper_gtare.json") + " " +
              fixture_path("paper_p_star.json") +
              " --x0 0,0,0 --dt 0.01 --horizon 0.05 --paths 2 --seed 1 "
              "--out " + csv1);
  REQUIRE(zero.exit_code == 0);
  const json j = json::parse(zero.out);
  CHECK(j["cost_mean"].get<double>() == doctest::Approx(0.0));
  std::remove(csv1.c_str());
  std::remove(csv2.c_str());
}
