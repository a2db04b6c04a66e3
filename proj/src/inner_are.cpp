#include "gtare/inner_are.hpp"

#include <cmath>

namespace gtare {

namespace {

DefiniteAre negated(const DefiniteAre& are) {
  DefiniteAre out = are;
  out.Qc = SymMatrix(-are.Qc.mat(), 1.0);
  out.Sc = -are.Sc;
  out.Rc = SymMatrix(-are.Rc.mat(), 1.0);
  out.orientation = Orientation::positive;
  return out;
}

MatrixXd quad_weight(const DefiniteAre& are, const SymMatrix& P) {
  MatrixXd W = are.Rc.mat();
  for (Index l = 0; l < are.r; ++l) {
    W += are.D[l].transpose() * P.mat() * are.D[l];
  }
  return 0.5 * (W + W.transpose());
}

MatrixXd cross_term(const DefiniteAre& are, const SymMatrix& P) {
  MatrixXd S = are.B.transpose() * P.mat() + are.Sc;
  for (Index l = 0; l < are.r; ++l) {
    S += are.D[l].transpose() * P.mat() * are.C[l];
  }
  return S;
}

}  // namespace

DefiniteAre make_definite_are(MatrixXd A, std::vector<MatrixXd> C, MatrixXd B,
                              std::vector<MatrixXd> D, SymMatrix Qc,
                              MatrixXd Sc, SymMatrix Rc,
                              Orientation orientation, const Tolerances& tol) {
  DefiniteAre are;
  are.n = A.rows();
  are.m = B.cols();
  are.r = static_cast<Index>(C.size());
  if (A.cols() != are.n || B.rows() != are.n || Qc.dim() != are.n ||
      Sc.rows() != are.m || Sc.cols() != are.n || Rc.dim() != are.m ||
      D.size() != C.size()) {
    throw Error(ErrorCode::DimensionMismatch, "DefiniteAre: bad shapes");
  }
  for (Index l = 0; l < are.r; ++l) {
    if (C[l].rows() != are.n || C[l].cols() != are.n ||
        D[l].rows() != are.n || D[l].cols() != are.m) {
      throw Error(ErrorCode::DimensionMismatch, "DefiniteAre: bad C/D shapes");
    }
  }
  const double sign = orientation == Orientation::positive ? 1.0 : -1.0;
  if (eig_min_sym(SymMatrix(sign * Rc.mat(), 1.0)) <= tol.psd_tol) {
    throw Error(ErrorCode::OrientationLost,
                "Rc is not definite with the requested orientation");
  }
  are.A = std::move(A);
  are.C = std::move(C);
  are.B = std::move(B);
  are.D = std::move(D);
  are.Qc = std::move(Qc);
  are.Sc = std::move(Sc);
  are.Rc = std::move(Rc);
  are.orientation = orientation;
  return are;
}

MatrixXd gain_map(const DefiniteAre& are, const SymMatrix& P,
                  const Tolerances& tol) {
  return -solve_linear(quad_weight(are, P), cross_term(are, P), tol).X;
}

double are_residual_norm(const DefiniteAre& are, const SymMatrix& P,
                         const Tolerances& tol) {
  const MatrixXd S = cross_term(are, P);
  MatrixXd G = P.mat() * are.A + are.A.transpose() * P.mat() + are.Qc.mat();
  for (Index l = 0; l < are.r; ++l) {
    G += are.C[l].transpose() * P.mat() * are.C[l];
  }
  G -= S.transpose() * solve_linear(quad_weight(are, P), S, tol).X;
  return G.norm();
}

bool check_zero_in_gamma(const DefiniteAre& are, const Tolerances& tol) {
  const double sign = are.orientation == Orientation::positive ? 1.0 : -1.0;
  if (eig_min_sym(SymMatrix(sign * are.Rc.mat(), 1.0)) <= tol.psd_tol) {
    return false;
  }
  MatrixXd block(are.n + are.m, are.n + are.m);
  block << sign * are.Qc.mat(), sign * are.Sc.transpose(), sign * are.Sc,
      sign * are.Rc.mat();
  return eig_min_sym(symmetrize(block)) >= -tol.psd_tol;
}

MatrixXd find_initial_gain(const DefiniteAre& are,
                           const std::vector<MatrixXd>& hints,
                           const Tolerances& tol) {
  std::vector<MatrixXd> candidates;
  candidates.push_back(MatrixXd::Zero(are.m, are.n));
  for (const MatrixXd& h : hints) candidates.push_back(h);
  for (const MatrixXd& T : candidates) {
    if (T.rows() != are.m || T.cols() != are.n) continue;
    MatrixXd Acl = are.A + are.B * T;
    std::vector<MatrixXd> Ccl;
    Ccl.reserve(static_cast<size_t>(are.r));
    for (Index l = 0; l < are.r; ++l) Ccl.push_back(are.C[l] + are.D[l] * T);
    if (spectral_abscissa(Acl, Ccl) < -tol.stab_tol) return T;
  }
  throw Error(ErrorCode::StabilizerNotFound,
              "no candidate gain stabilizes the subproblem; supply a "
              "certificate gain L");
}

InnerSolveReport newton_kleinman(const DefiniteAre& are, const MatrixXd& T0,
                                 double inner_tol, int max_iters,
                                 const Tolerances& tol) {
  if (are.orientation == Orientation::negative) {
    // Negating (Qc, Sc, Rc) maps stabilizing solutions Z -> -Z with the
    // same gain and closed loop; run the positive path on the negation.
    InnerSolveReport rep = newton_kleinman(negated(are), T0, inner_tol,
                                           max_iters, tol);
    rep.Z = SymMatrix(-rep.Z.mat(), 1.0);
    rep.residual_norm = are_residual_norm(are, rep.Z, tol);
    return rep;
  }

  InnerSolveReport rep;
  MatrixXd T = T0;
  SymMatrix Z = SymMatrix::Zero(are.n);
  bool have_prev = false;
  double monotone_violation = 0.0;

  for (int j = 0; j < max_iters; ++j) {
    MatrixXd Acl = are.A + are.B * T;
    std::vector<MatrixXd> Ccl;
    Ccl.reserve(static_cast<size_t>(are.r));
    for (Index l = 0; l < are.r; ++l) Ccl.push_back(are.C[l] + are.D[l] * T);
    const MatrixXd W = are.Qc.mat() + T.transpose() * are.Rc.mat() * T +
                       are.Sc.transpose() * T + T.transpose() * are.Sc;
    SymMatrix Znext =
        solve_generalized_lyapunov(Acl, Ccl, symmetrize(W), tol);

    if (eig_min_sym(SymMatrix(quad_weight(are, Znext), 1.0)) <= tol.psd_tol) {
      throw Error(ErrorCode::OrientationLost,
                  "quadratic weight lost definiteness during the Newton "
                  "iteration");
    }
    T = gain_map(are, Znext, tol);
    rep.newton_iters = j + 1;

    if (have_prev) {
      // Classical monotone decrease holds for j >= 1.
      if (j >= 1) {
        const double up = eig_max_sym(SymMatrix(Znext.mat() - Z.mat(), 1.0));
        monotone_violation = std::max(monotone_violation, std::max(0.0, up));
      }
      const double step = (Znext.mat() - Z.mat()).norm();
      if (step <= inner_tol * std::max(1.0, Znext.mat().norm())) {
        Z = Znext;
        rep.Z = Z;
        rep.T = T;
        rep.residual_norm = are_residual_norm(are, Z, tol);
        rep.monotone_violation = monotone_violation;
        if (rep.residual_norm <= inner_tol * 10.0) {
          return rep;
        }
        // Step converged but residual not yet small enough; keep iterating.
      }
    }
    Z = Znext;
    have_prev = true;
  }
  rep.Z = Z;
  rep.T = T;
  rep.residual_norm = are_residual_norm(are, Z, tol);
  rep.monotone_violation = monotone_violation;
  if (rep.residual_norm <= inner_tol * 10.0) {
    return rep;
  }
  throw Error(ErrorCode::MaxItersExceeded,
              "Newton-Kleinman did not converge in " +
                  std::to_string(max_iters) + " iterations (residual " +
                  std::to_string(rep.residual_norm) + ")");
}

}  // namespace gtare
