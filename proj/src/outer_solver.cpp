#include "gtare/outer_solver.hpp"

#include <cmath>
#include <sstream>

#include "gtare/certify.hpp"
#include "gtare/stability.hpp"

namespace gtare {

namespace {

DefiniteAre subproblem_at(const GtareProblem& p, const SymMatrix& P_k,
                          const Tolerances& tol) {
  const ClosedLoop cl = closed_loop(p, P_k, tol);
  const SymMatrix M_k = residual_G(p, P_k, tol);
  if (eig_min_sym(M_k) < -1e-6) {
    throw Error(ErrorCode::NegativeConstantTerm,
                "subproblem constant term M_k has eigenvalue " +
                    std::to_string(eig_min_sym(M_k)) +
                    " < -1e-6; the theory guarantees M_k >= 0");
  }
  const CoefficientBlocks b = coefficient_blocks(p, P_k);
  return make_definite_are(cl.A, cl.C, p.B2, p.D2, M_k,
                           MatrixXd::Zero(p.m2, p.n),
                           SymMatrix(b.R22P, 1.0), Orientation::positive,
                           tol);
}

/// Builds the full record at P = P^(k): subproblem, inner solve, and the
/// theorem a_k/c_k audits at P + Z.
IterationRecord make_record(const GtareProblem& p, int k, const SymMatrix& P,
                            const std::vector<MatrixXd>& hints,
                            const Tolerances& tol) {
  IterationRecord rec;
  rec.k = k;
  rec.P = P;
  const DefiniteAre are = subproblem_at(p, P, tol);
  rec.A_k = are.A;
  rec.C_k = are.C;
  rec.M_k = are.Qc;
  rec.m_eigs = eig_sym(rec.M_k);
  rec.residual_norm = rec.M_k.mat().norm();

  MatrixXd T0;
  try {
    T0 = find_initial_gain(are, hints, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::StabilizerNotFound) {
      throw Error(ErrorCode::StabilizerNotFound,
                  "outer step k=" + std::to_string(k) + ": " + e.what());
    }
    throw;
  }
  rec.inner = newton_kleinman(are, T0, tol.inner_tol, tol.max_inner, tol);
  rec.Z = rec.inner.Z;
  rec.z_eigs = eig_sym(rec.Z);
  rec.z_norm = rec.Z.mat().norm();
  rec.N_k = n_matrix(p, P, rec.Z, tol);

  // Theorem audits at P_next = P + Z.
  const SymMatrix P_next = symmetrize(P.mat() + rec.Z.mat());
  const CoefficientBlocks bn = coefficient_blocks(p, P_next);
  const MatrixXd N2 = rec.N_k.bottomRows(p.m2);
  const MatrixXd N1 = rec.N_k.topRows(p.m1);
  const MatrixXd T_k = -solve_linear(bn.R22P, N2, tol).X;
  MatrixXd A_a = rec.A_k + p.B2 * T_k;
  std::vector<MatrixXd> C_a;
  C_a.reserve(static_cast<size_t>(p.r));
  for (Index l = 0; l < p.r; ++l) C_a.push_back(rec.C_k[l] + p.D2[l] * T_k);
  rec.a_abscissa = spectral_abscissa(A_a, C_a);

  const MatrixXd N_hat = N1 - bn.R12P * solve_linear(bn.R22P, N2, tol).X;
  const SymMatrix sharp = schur_r22(p, P_next, tol);
  const MatrixXd rhs =
      -N_hat.transpose() * solve_linear(sharp.mat(), N_hat, tol).X;
  const SymMatrix G_next = residual_G(p, P_next, tol);
  rec.c_deviation = (G_next.mat() - rhs).norm() /
                    std::max(1.0, G_next.mat().norm());
  return rec;
}

std::vector<MatrixXd> gather_hints(const GtareProblem& p, const SymMatrix& P,
                                   const MatrixXd* prev_T,
                                   const std::optional<MatrixXd>& L,
                                   const Tolerances& tol) {
  std::vector<MatrixXd> hints;
  if (prev_T && prev_T->size() > 0) hints.push_back(*prev_T);
  if (L) {
    // L - K_hat_2(P) with K_hat_2(P) = K2(P) - K2(0) stabilizes the
    // subproblem at P when L is admissible.
    const Gains gP = gains(p, P, tol);
    const Gains g0 = gains(p, SymMatrix::Zero(p.n), tol);
    hints.push_back(*L - (gP.K2 - g0.K2));
  }
  return hints;
}

}  // namespace

DefiniteAre init_subproblem(const GtareProblem& p, const Tolerances& tol) {
  const std::vector<std::string> diags = validate(p, tol);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid problem:";
    for (const std::string& d : diags) os << " " << d << ";";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  return subproblem_at(p, SymMatrix::Zero(p.n), tol);
}

DefiniteAre build_subproblem(const GtareProblem& p, const SymMatrix& P_k,
                             const Tolerances& tol) {
  return subproblem_at(p, P_k, tol);
}

IterationRecord outer_step(const GtareProblem& p, const IterationRecord& prev,
                           const SolveOptions& options) {
  const SymMatrix P_k = symmetrize(prev.P.mat() + prev.Z.mat());
  if (!in_dom_G(p, P_k, options.tol)) {
    throw Error(ErrorCode::DomainExit,
                "P^(k) left Dom G at k=" + std::to_string(prev.k + 1));
  }
  const std::vector<MatrixXd> hints = gather_hints(
      p, P_k, &prev.inner.T, options.certificate, options.tol);
  return make_record(p, prev.k + 1, P_k, hints, options.tol);
}

SolveReport solve_gtare(const GtareProblem& p, const SolveOptions& options) {
  const Tolerances& tol = options.tol;
  if (p.m2 <= 0) {
    throw Error(ErrorCode::UnsupportedShape,
                "m2 = 0: the inner channel is player 2's; a minimizer "
                "input is required");
  }
  const std::vector<std::string> diags = validate(p, tol);
  if (!diags.empty()) {
    std::ostringstream os;
    os << "invalid problem:";
    for (const std::string& d : diags) os << " " << d << ";";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
  const SymMatrix zero = SymMatrix::Zero(p.n);
  if (!in_dom_G(p, zero, tol)) {
    throw Error(ErrorCode::NotInDomain,
                "0 is not in Dom G: need R22(0) > 0 and R11(0) < 0");
  }

  SolveReport report;
  if (options.certificate) {
    report.certificate_used = *options.certificate;
    const CertificateReport cert =
        check_certificate(p, *options.certificate, tol);
    if (cert.admissible) report.p_tilde = cert.P_tilde;
  }

  auto finish_record = [&](IterationRecord& rec) {
    if (report.p_tilde) {
      rec.b_slack = upper_bound_check(*report.p_tilde, rec.P, rec.Z);
      rec.b_audited = true;
    }
    if (options.observer) options.observer(rec);
    report.history.push_back(std::move(rec));
  };

  IterationRecord rec = make_record(
      p, 0, zero, gather_hints(p, zero, nullptr, options.certificate, tol),
      tol);
  bool converged = false;
  while (true) {
    const bool small_step =
        rec.z_norm <= options.outer_tol * std::max(1.0, rec.P.mat().norm());
    finish_record(rec);
    const IterationRecord& last = report.history.back();
    if (small_step) {
      // One more step so the final record sits at P* = P^(k) + Z^(k).
      IterationRecord fin = outer_step(p, last, options);
      finish_record(fin);
      converged = true;
      break;
    }
    if (last.k + 1 > options.max_outer) {
      throw Error(ErrorCode::MaxOuterExceeded,
                  "outer iteration did not converge in " +
                      std::to_string(options.max_outer) + " steps (||Z|| = " +
                      std::to_string(last.z_norm) + ")");
    }
    rec = outer_step(p, last, options);
  }
  (void)converged;

  const IterationRecord& last = report.history.back();
  report.outer_iters = last.k;
  report.P_star = last.P;
  report.gains = gains(p, report.P_star, tol);
  report.residual_norm = residual_G(p, report.P_star, tol).mat().norm();
  const ClosedLoop cl = closed_loop(p, report.gains);
  report.stability_abscissa = spectral_abscissa(cl.A, cl.C);
  if (!in_dom_G(p, report.P_star, tol)) {
    throw Error(ErrorCode::DomainExit, "converged P* left Dom G");
  }
  return report;
}

double recursion_audit(const GtareProblem& p, const IterationRecord& prev,
                       const IterationRecord& cur, const Tolerances& tol) {
  if (cur.k != prev.k + 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "recursion_audit requires consecutive records");
  }
  const CoefficientBlocks b = coefficient_blocks(p, cur.P);
  // Proposition 3.1: K(P_k) - K(P_{k-1}) = -R(P_k)^{-1} N_{(k-1)}.
  const MatrixXd dK = -solve_linear(b.RP.mat(), prev.N_k, tol).X;
  const MatrixXd dK1 = dK.topRows(p.m1);
  const MatrixXd dK2 = dK.bottomRows(p.m2);

  double dev = 0.0;
  auto rel = [](const MatrixXd& got, const MatrixXd& want) {
    return (got - want).norm() / std::max(1.0, want.norm());
  };
  dev = std::max(dev, rel(prev.A_k + p.B1 * dK1 + p.B2 * dK2, cur.A_k));
  for (Index l = 0; l < p.r; ++l) {
    dev = std::max(
        dev, rel(prev.C_k[l] + p.D1[l] * dK1 + p.D2[l] * dK2, cur.C_k[l]));
  }
  // Item c_{k-1} with the corrected sign: M_k = -N_hat^T Rsharp(P_k)^{-1}
  // N_hat.
  const MatrixXd N1 = prev.N_k.topRows(p.m1);
  const MatrixXd N2 = prev.N_k.bottomRows(p.m2);
  const MatrixXd N_hat = N1 - b.R12P * solve_linear(b.R22P, N2, tol).X;
  const SymMatrix sharp = schur_r22(p, cur.P, tol);
  const MatrixXd M_rec =
      -N_hat.transpose() * solve_linear(sharp.mat(), N_hat, tol).X;
  dev = std::max(dev, rel(M_rec, cur.M_k.mat()));
  return dev;
}

}  // namespace gtare
