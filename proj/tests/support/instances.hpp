// Shared test instances: the bundled paper fixture, the SCALAR-1 scalar
// game, a seeded random-instance generator, and a CLI process runner.
#ifndef GTARE_TESTS_INSTANCES_HPP
#define GTARE_TESTS_INSTANCES_HPP

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <random>
#include <string>

#include "gtare/model.hpp"
#include "gtare/problem_io.hpp"
#include "support/oracles.hpp"

namespace gtare_tests {

inline std::string fixture_path(const std::string& name) {
  return std::string(GTARE_FIXTURE_DIR) + "/" + name;
}

inline gtare::ProblemFile paper_fixture() {
  return gtare::read_problem(fixture_path("paper_gtare.json"));
}

inline gtare::MatrixXd paper_printed_p_star() {
  return gtare::read_matrix(fixture_path("paper_p_star.json"));
}

/// SCALAR-1: the spec's canonical scalar game. Open-loop mean-square
/// stable (2a + c^2 = -1.75 < 0), so it solves without a certificate.
inline ScalarGtare scalar1_params() {
  ScalarGtare s;
  s.a = -1.0;
  s.c = 0.5;
  s.b1 = 0.2;
  s.b2 = 1.0;
  s.d1 = 0.1;
  s.d2 = 0.1;
  s.q = 1.0;
  s.s1 = 0.0;
  s.s2 = 0.0;
  s.r11 = -2.0;
  s.r12 = 0.0;
  s.r22 = 1.0;
  return s;
}

inline gtare::GtareProblem scalar_problem(const ScalarGtare& s) {
  gtare::GtareProblem p;
  p.n = p.m1 = p.m2 = p.r = 1;
  auto m = [](double v) {
    gtare::MatrixXd out(1, 1);
    out(0, 0) = v;
    return out;
  };
  p.A = m(s.a);
  p.C = {m(s.c)};
  p.B1 = m(s.b1);
  p.B2 = m(s.b2);
  p.D1 = {m(s.d1)};
  p.D2 = {m(s.d2)};
  p.Q = gtare::SymMatrix(m(s.q));
  p.S1 = m(s.s1);
  p.S2 = m(s.s2);
  p.R11 = gtare::SymMatrix(m(s.r11));
  p.R12 = m(s.r12);
  p.R22 = gtare::SymMatrix(m(s.r22));
  return p;
}

inline gtare::GtareProblem scalar1_problem() {
  return scalar_problem(scalar1_params());
}

inline gtare::MatrixXd random_matrix(std::mt19937& rng, gtare::Index rows,
                                     gtare::Index cols, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  gtare::MatrixXd m(rows, cols);
  for (gtare::Index i = 0; i < rows; ++i)
    for (gtare::Index j = 0; j < cols; ++j) m(i, j) = u(rng);
  return m;
}

inline gtare::SymMatrix random_sym(std::mt19937& rng, gtare::Index n,
                                   double scale) {
  const gtare::MatrixXd m = random_matrix(rng, n, n, scale);
  return gtare::symmetrize(m);
}

/// Random GTARE instance per the generator design: open loop mean-square
/// stable (log-norm of A shifted to -1, C_l Frobenius norm <= 0.5),
/// R11 = -(I + G G^T), R22 = I + H H^T, small D entries, Q positive
/// definite. with_cross adds small S1, S2, R12.
inline gtare::GtareProblem random_problem(std::mt19937& rng, gtare::Index n,
                                          gtare::Index m1, gtare::Index m2,
                                          gtare::Index r,
                                          bool with_cross = false) {
  gtare::GtareProblem p;
  p.n = n;
  p.m1 = m1;
  p.m2 = m2;
  p.r = r;
  p.A = random_matrix(rng, n, n);
  const double mu =
      gtare::eig_max_sym(gtare::symmetrize(p.A));  // log norm of A
  p.A -= (mu + 1.0) * gtare::MatrixXd::Identity(n, n);
  for (gtare::Index l = 0; l < r; ++l) {
    gtare::MatrixXd Cl = random_matrix(rng, n, n);
    Cl *= 0.5 / std::max(1.0, Cl.norm());
    p.C.push_back(Cl);
    p.D1.push_back(random_matrix(rng, n, m1, 0.01));
    p.D2.push_back(random_matrix(rng, n, m2, 0.01));
  }
  p.B1 = random_matrix(rng, n, m1);
  p.B2 = random_matrix(rng, n, m2);
  const gtare::MatrixXd F = random_matrix(rng, n, n);
  p.Q = gtare::symmetrize(F * F.transpose() +
                          0.5 * gtare::MatrixXd::Identity(n, n));
  const gtare::MatrixXd G = random_matrix(rng, m1, m1);
  const gtare::MatrixXd H = random_matrix(rng, m2, m2);
  p.R11 = gtare::symmetrize(
      -(gtare::MatrixXd::Identity(m1, m1) + G * G.transpose()));
  p.R22 = gtare::symmetrize(gtare::MatrixXd::Identity(m2, m2) +
                            H * H.transpose());
  if (with_cross) {
    p.S1 = random_matrix(rng, m1, n, 0.1);
    p.S2 = random_matrix(rng, m2, n, 0.1);
    p.R12 = random_matrix(rng, m1, m2, 0.1);
  } else {
    p.S1 = gtare::MatrixXd::Zero(m1, n);
    p.S2 = gtare::MatrixXd::Zero(m2, n);
    p.R12 = gtare::MatrixXd::Zero(m1, m2);
  }
  return p;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
};

/// Runs the built CLI binary with the given argument string; stdout is
/// captured, stderr discarded.
inline CliResult run_cli(const std::string& args) {
  const std::string cmd =
      std::string(GTARE_CLI_PATH) + " " + args + " 2>/dev/null";
  CliResult res;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  if (!pipe) return res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = ::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
    res.out.append(buf.data(), got);
  }
  const int status = ::pclose(pipe);
  res.exit_code = (status >= 0 && WIFEXITED(status)) ? WEXITSTATUS(status)
                                                     : -1;
  return res;
}

inline std::string read_file(const std::string& path) {
  FILE* f = std::fopen(path.c_str(), "rb");
  if (!f) return {};
  std::string out;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = std::fread(buf.data(), 1, buf.size(), f)) > 0) {
    out.append(buf.data(), got);
  }
  std::fclose(f);
  return out;
}

}  // namespace gtare_tests

#endif  // GTARE_TESTS_INSTANCES_HPP
