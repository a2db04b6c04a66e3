// gtare: solver CLI for game-theoretic algebraic Riccati equations.
//
// Subcommands: solve, residual, simulate, certificate, validate.
// Exit codes: 0 success, 1 input error, 2 solver error, 3 certificate
// rejected.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "gtare/certify.hpp"
#include "gtare/outer_solver.hpp"
#include "gtare/problem_io.hpp"
#include "gtare/sim.hpp"
#include "gtare/stability.hpp"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;
constexpr int kExitCertificate = 3;

int verbosity() {
  const char* v = std::getenv("GTARE_LOG");
  return v ? std::atoi(v) : 0;
}

void log_info(const std::string& msg) {
  if (verbosity() > 0) std::cerr << "[gtare] " << msg << "\n";
}

int emit_error(const gtare::Error& e) {
  json j;
  j["error"] = gtare::error_code_name(e.code());
  j["message"] = e.what();
  std::cout << j.dump() << std::endl;
  switch (e.code()) {
    case gtare::ErrorCode::ParseError:
    case gtare::ErrorCode::DimensionMismatch:
    case gtare::ErrorCode::UnsupportedRankDeficientR:
    case gtare::ErrorCode::UnsupportedShape:
    case gtare::ErrorCode::NonTriangularLength:
      return kExitInput;
    default:
      return kExitSolver;
  }
}

json matrix_json(const gtare::MatrixXd& m) {
  json rows = json::array();
  for (gtare::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (gtare::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) {
    throw gtare::Error(gtare::ErrorCode::ParseError,
                       "cannot write file: " + path);
  }
  out << text;
}

std::string csv_num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

gtare::VectorXd parse_x0(const std::string& spec, gtare::Index n) {
  if (spec.empty()) return gtare::VectorXd::Ones(n);
  std::vector<double> vals;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      vals.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw gtare::Error(gtare::ErrorCode::ParseError,
                         "--x0: bad number '" + item + "'");
    }
  }
  if (static_cast<gtare::Index>(vals.size()) != n) {
    throw gtare::Error(gtare::ErrorCode::ParseError,
                       "--x0: expected " + std::to_string(n) + " values");
  }
  gtare::VectorXd x0(n);
  for (gtare::Index i = 0; i < n; ++i) x0[i] = vals[static_cast<size_t>(i)];
  return x0;
}

int run_solve(const std::string& path, double tol_flag, int max_outer,
              const std::string& trace_path, const std::string& cert_path,
              const std::string& out_path, bool lax) {
  gtare::ProblemFile pf;
  std::optional<gtare::MatrixXd> L;
  try {
    pf = gtare::read_problem(path, !lax);
    for (const std::string& w : pf.warnings) std::cerr << "warning: " << w << "\n";
    L = pf.L;
    if (!cert_path.empty()) L = gtare::read_matrix(cert_path);
  } catch (const gtare::Error& e) {
    return emit_error(e);
  }

  gtare::SolveOptions options;
  options.outer_tol = tol_flag;
  options.max_outer = max_outer;
  options.certificate = L;
  gtare::SolveReport report;
  try {
    report = gtare::solve_gtare(pf.problem, options);
  } catch (const gtare::Error& e) {
    return emit_error(e);
  }
  log_info("converged in " + std::to_string(report.outer_iters) +
           " outer iterations");

  json j;
  j["P_star"] = matrix_json(report.P_star.mat());
  j["K1"] = matrix_json(report.gains.K1);
  j["K2"] = matrix_json(report.gains.K2);
  j["residual_norm"] = report.residual_norm;
  j["outer_iters"] = report.outer_iters;
  j["stability_abscissa"] = report.stability_abscissa;
  j["certificate_used"] = report.certificate_used.has_value();
  const std::string text = j.dump(2) + "\n";
  try {
    if (out_path.empty()) {
      std::cout << text;
    } else {
      write_text(out_path, text);
    }
    if (!trace_path.empty()) {
      const gtare::Index n = pf.problem.n;
      std::ostringstream csv;
      csv << "k,z_norm,residual_norm";
      for (gtare::Index i = 1; i <= n; ++i) csv << ",z_eig_" << i;
      for (gtare::Index i = 1; i <= n; ++i) csv << ",m_eig_" << i;
      csv << "\n";
      for (const gtare::IterationRecord& rec : report.history) {
        csv << rec.k << "," << csv_num(rec.z_norm) << ","
            << csv_num(rec.residual_norm);
        for (gtare::Index i = 0; i < n; ++i) csv << "," << csv_num(rec.z_eigs[i]);
        for (gtare::Index i = 0; i < n; ++i) csv << "," << csv_num(rec.m_eigs[i]);
        csv << "\n";
      }
      write_text(trace_path, csv.str());
    }
  } catch (const gtare::Error& e) {
    return emit_error(e);
  }
  return kExitOk;
}

int run_residual(const std::string& problem_path, const std::string& p_path) {
  try {
    const gtare::ProblemFile pf = gtare::read_problem(problem_path);
    const gtare::MatrixXd Pm = gtare::read_matrix(p_path);
    if (Pm.rows() != pf.problem.n || Pm.cols() != pf.problem.n) {
      throw gtare::Error(gtare::ErrorCode::DimensionMismatch,
                         "P must be n x n");
    }
    const gtare::SymMatrix P(Pm);
    const double norm = gtare::residual_G(pf.problem, P).mat().norm();
    const bool in_dom = gtare::in_dom_G(pf.problem, P);
    json j;
    j["residual_norm"] = norm;
    j["in_dom_G"] = in_dom;
    std::cout << j.dump() << std::endl;
    return kExitOk;
  } catch (const gtare::Error& e) {
    const int code = emit_error(e);
    // Per contract, dimension mismatches here are input errors.
    return e.code() == gtare::ErrorCode::DimensionMismatch ? kExitInput : code;
  }
}

int run_simulate(const std::string& problem_path, const std::string& pg_path,
                 const std::string& x0_spec, double dt, double horizon,
                 int paths, std::uint64_t seed, const std::string& out_path) {
  try {
    const gtare::ProblemFile pf = gtare::read_problem(problem_path);
    const gtare::POrGains pg = gtare::read_p_or_gains(pg_path);
    gtare::Gains g;
    if (pg.gains) {
      g = *pg.gains;
    } else {
      if (pg.P->rows() != pf.problem.n || pg.P->cols() != pf.problem.n) {
        throw gtare::Error(gtare::ErrorCode::DimensionMismatch,
                           "P must be n x n");
      }
      g = gtare::gains(pf.problem, gtare::SymMatrix(*pg.P));
    }
    const gtare::ClosedLoop cl = gtare::closed_loop(pf.problem, g);
    if (!gtare::is_mean_square_stable(cl.A, cl.C)) {
      std::cerr << "warning: closed loop is not mean-square stable; "
                   "simulating the finite horizon anyway\n";
    }
    gtare::SimConfig cfg;
    cfg.x0 = parse_x0(x0_spec, pf.problem.n);
    cfg.dt = dt;
    cfg.horizon = horizon;
    cfg.paths = paths;
    cfg.seed = seed;
    const gtare::TrajectoryBatch batch = gtare::simulate(pf.problem, g, cfg);
    const auto [mean, stderr_] = gtare::estimate_cost(pf.problem, batch);

    std::ostringstream csv;
    const gtare::Index n = pf.problem.n;
    csv << "t";
    for (gtare::Index i = 1; i <= n; ++i) csv << ",mean_x" << i;
    for (gtare::Index i = 1; i <= n; ++i) csv << ",x" << i;
    for (gtare::Index i = 1; i <= pf.problem.m1; ++i) csv << ",u1_" << i;
    for (gtare::Index i = 1; i <= pf.problem.m2; ++i) csv << ",u2_" << i;
    csv << "\n";
    for (gtare::Index t = 0; t < batch.times.size(); ++t) {
      csv << csv_num(batch.times[t]);
      for (gtare::Index i = 0; i < n; ++i)
        csv << "," << csv_num(batch.mean_states(t, i));
      for (gtare::Index i = 0; i < n; ++i)
        csv << "," << csv_num(batch.sample_states(t, i));
      for (gtare::Index i = 0; i < pf.problem.m1; ++i)
        csv << "," << csv_num(batch.sample_u1(t, i));
      for (gtare::Index i = 0; i < pf.problem.m2; ++i)
        csv << "," << csv_num(batch.sample_u2(t, i));
      csv << "\n";
    }
    if (out_path.empty()) {
      std::cout << csv.str();
    } else {
      write_text(out_path, csv.str());
    }
    json j;
    j["cost_mean"] = mean;
    j["cost_stderr"] = stderr_;
    j["paths"] = batch.paths;
    j["horizon"] = batch.horizon;
    std::cout << j.dump() << std::endl;
    return kExitOk;
  } catch (const gtare::Error& e) {
    return emit_error(e);
  }
}

int run_certificate(const std::string& problem_path,
                    const std::string& l_path) {
  gtare::CertificateReport rep;
  try {
    const gtare::ProblemFile pf = gtare::read_problem(problem_path);
    gtare::MatrixXd L;
    if (l_path.empty()) {
      if (!pf.L) {
        throw gtare::Error(gtare::ErrorCode::ParseError,
                           "no certificate: pass an L file or embed L in the "
                           "problem file");
      }
      L = *pf.L;
    } else {
      L = gtare::read_matrix(l_path);
    }
    if (L.rows() != pf.problem.m2 || L.cols() != pf.problem.n) {
      throw gtare::Error(gtare::ErrorCode::DimensionMismatch,
                         "L must be m2 x n");
    }
    rep = gtare::check_certificate(pf.problem, L);
  } catch (const gtare::Error& e) {
    emit_error(e);
    return kExitInput;
  }
  json j;
  j["admissible"] = rep.admissible;
  switch (rep.failure_reason) {
    case gtare::CertificateFailure::None:
      j["failure_reason"] = nullptr;
      break;
    case gtare::CertificateFailure::ClosedLoopUnstable:
      j["failure_reason"] = "ClosedLoopUnstable";
      break;
    case gtare::CertificateFailure::AreSolveFailed:
      j["failure_reason"] = "AreSolveFailed";
      break;
    case gtare::CertificateFailure::SignConditionViolated:
      j["failure_reason"] = "SignConditionViolated";
      break;
  }
  if (!rep.failure_detail.empty()) j["failure_detail"] = rep.failure_detail;
  if (rep.P_tilde) j["P_tilde"] = matrix_json(rep.P_tilde->mat());
  std::cout << j.dump(2) << std::endl;
  return rep.admissible ? kExitOk : kExitCertificate;
}

int run_validate(const std::string& problem_path, bool lax) {
  try {
    const gtare::ProblemFile pf = gtare::read_problem(problem_path, !lax);
    for (const std::string& w : pf.warnings)
      std::cerr << "warning: " << w << "\n";
    json j;
    j["valid"] = true;
    j["diagnostics"] = json::array();
    std::cout << j.dump() << std::endl;
    return kExitOk;
  } catch (const gtare::Error& e) {
    emit_error(e);
    return kExitInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"GTARE solver: stabilizing solutions of game-theoretic "
               "algebraic Riccati equations"};
  app.require_subcommand(1);

  // solve
  std::string solve_path, trace_path, cert_path, out_path;
  double tol_flag = 1e-7;
  int max_outer = 100;
  bool lax = false;
  CLI::App* solve = app.add_subcommand("solve", "solve the GTARE");
  solve->add_option("problem", solve_path, "problem JSON file")->required();
  solve->add_option("--tol", tol_flag, "outer stopping tolerance");
  solve->add_option("--max-outer", max_outer, "max outer iterations");
  solve->add_option("--trace", trace_path, "write per-iteration CSV trace");
  solve->add_option("--certificate", cert_path, "certificate gain L file");
  solve->add_option("--out", out_path, "write the solve report here");
  solve->add_flag("--lax", lax, "warn on unknown fields instead of failing");

  // residual
  std::string res_problem, res_p;
  CLI::App* residual =
      app.add_subcommand("residual", "evaluate ||G(P)||_F at a given P");
  residual->add_option("problem", res_problem, "problem JSON file")
      ->required();
  residual->add_option("P", res_p, "matrix JSON file")->required();

  // simulate
  std::string sim_problem, sim_pg, sim_x0, sim_out;
  double sim_dt = 1e-3, sim_horizon = 10.0;
  int sim_paths = 2000;
  std::uint64_t sim_seed = 0;
  CLI::App* simulate =
      app.add_subcommand("simulate", "Monte Carlo closed-loop simulation");
  simulate->add_option("problem", sim_problem, "problem JSON file")
      ->required();
  simulate->add_option("P_or_gains", sim_pg, "P matrix or {K1,K2} JSON file")
      ->required();
  simulate->add_option("--x0", sim_x0, "comma-separated initial state "
                                       "(default: all ones)");
  simulate->add_option("--dt", sim_dt, "time step");
  simulate->add_option("--horizon", sim_horizon, "simulation horizon");
  simulate->add_option("--paths", sim_paths, "number of Monte Carlo paths");
  simulate->add_option("--seed", sim_seed, "RNG seed");
  simulate->add_option("--out", sim_out, "write trajectory CSV here");

  // certificate
  std::string cert_problem, cert_l;
  CLI::App* certificate =
      app.add_subcommand("certificate", "check admissibility of a gain L");
  certificate->add_option("problem", cert_problem, "problem JSON file")
      ->required();
  certificate->add_option("L", cert_l, "gain matrix JSON file (optional if "
                                       "the problem file embeds L)");

  // validate
  std::string val_problem;
  bool val_lax = false;
  CLI::App* validate =
      app.add_subcommand("validate", "parse and validate a problem file");
  validate->add_option("problem", val_problem, "problem JSON file")
      ->required();
  validate->add_flag("--lax", val_lax,
                     "warn on unknown fields instead of failing");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitInput;
  }

  if (solve->parsed())
    return run_solve(solve_path, tol_flag, max_outer, trace_path, cert_path,
                     out_path, lax);
  if (residual->parsed()) return run_residual(res_problem, res_p);
  if (simulate->parsed())
    return run_simulate(sim_problem, sim_pg, sim_x0, sim_dt, sim_horizon,
                        sim_paths, sim_seed, sim_out);
  if (certificate->parsed()) return run_certificate(cert_problem, cert_l);
  if (validate->parsed()) return run_validate(val_problem, val_lax);
  return kExitInput;
}
