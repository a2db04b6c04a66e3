#include "gtare/certify.hpp"

#include "gtare/stability.hpp"

namespace gtare {

DecoupledData decoupled_data(const GtareProblem& p, const MatrixXd& L,
                             const Tolerances& tol) {
  if (L.rows() != p.m2 || L.cols() != p.n) {
    throw Error(ErrorCode::DimensionMismatch,
                "certificate L must be m2 x n");
  }
  const SymMatrix zero = SymMatrix::Zero(p.n);
  const Gains g0 = gains(p, zero, tol);
  const ClosedLoop cl0 = closed_loop(p, g0);

  DecoupledData out;
  out.A_L = cl0.A + p.B2 * L;
  out.C_L.reserve(static_cast<size_t>(p.r));
  for (Index l = 0; l < p.r; ++l) out.C_L.push_back(cl0.C[l] + p.D2[l] * L);
  out.Q_L = symmetrize(residual_G(p, zero, tol).mat() +
                       L.transpose() * p.R22.mat() * L);
  out.S_L = p.R12 * L;
  return out;
}

CertificateReport check_certificate(const GtareProblem& p, const MatrixXd& L,
                                    const Tolerances& tol) {
  CertificateReport rep;
  rep.L = L;
  const DecoupledData d = decoupled_data(p, L, tol);
  if (!is_mean_square_stable(d.A_L, d.C_L, tol)) {
    rep.failure_reason = CertificateFailure::ClosedLoopUnstable;
    rep.failure_detail = "decoupled closed loop (A_L, C_L) is not "
                         "mean-square stable";
    return rep;
  }
  DefiniteAre are;
  try {
    are = make_definite_are(d.A_L, d.C_L, p.B1, p.D1, d.Q_L, d.S_L, p.R11,
                            Orientation::negative, tol);
  } catch (const Error& e) {
    rep.failure_reason = CertificateFailure::SignConditionViolated;
    rep.failure_detail = e.what();
    return rep;
  }
  InnerSolveReport inner;
  try {
    // Zero initial gain is admissible because (A_L, C_L) is stable.
    inner = newton_kleinman(are, MatrixXd::Zero(p.m1, p.n), tol.inner_tol,
                            tol.max_inner, tol);
  } catch (const Error& e) {
    rep.failure_reason = CertificateFailure::AreSolveFailed;
    rep.failure_detail = e.what();
    return rep;
  }
  MatrixXd R11t = p.R11.mat();
  for (Index l = 0; l < p.r; ++l) {
    R11t += p.D1[l].transpose() * inner.Z.mat() * p.D1[l];
  }
  if (eig_max_sym(symmetrize(R11t)) >= -tol.psd_tol) {
    rep.failure_reason = CertificateFailure::SignConditionViolated;
    rep.failure_detail = "R11 + sum D1^T P_tilde D1 is not negative definite";
    rep.P_tilde = inner.Z;
    return rep;
  }
  rep.admissible = true;
  rep.P_tilde = inner.Z;
  return rep;
}

double upper_bound_check(const SymMatrix& P_tilde, const SymMatrix& P_k,
                         const SymMatrix& Z_k) {
  if (P_tilde.dim() != P_k.dim() || P_k.dim() != Z_k.dim()) {
    throw Error(ErrorCode::DimensionMismatch,
                "upper_bound_check: dimension mismatch");
  }
  return eig_min_sym(
      SymMatrix(P_tilde.mat() - P_k.mat() - Z_k.mat(), 1.0));
}

std::vector<MatrixXd> candidate_gains(const GtareProblem& p,
                                      const Tolerances& tol) {
  std::vector<MatrixXd> out;
  out.push_back(MatrixXd::Zero(p.m2, p.n));
  try {
    const DefiniteAre lqr = make_definite_are(
        p.A, p.C, p.B2, p.D2, SymMatrix::Identity(p.n),
        MatrixXd::Zero(p.m2, p.n), SymMatrix::Identity(p.m2),
        Orientation::positive, tol);
    const MatrixXd T0 = find_initial_gain(lqr, {}, tol);
    const InnerSolveReport rep =
        newton_kleinman(lqr, T0, tol.inner_tol, tol.max_inner, tol);
    out.push_back(rep.T);
    out.push_back(0.5 * rep.T);
    out.push_back(2.0 * rep.T);
  } catch (const Error&) {
    // No LQR-like candidate available (e.g. open loop unstabilizable from
    // the zero gain); the zero candidate is still returned.
  }
  return out;
}

}  // namespace gtare
