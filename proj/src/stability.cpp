#include "gtare/stability.hpp"

namespace gtare {

SymMatrix apply_lyap(const MatrixXd& A, const std::vector<MatrixXd>& C,
                     const SymMatrix& S) {
  MatrixXd out = S.mat() * A + A.transpose() * S.mat();
  for (const MatrixXd& Cl : C) {
    out += Cl.transpose() * S.mat() * Cl;
  }
  return symmetrize(out);
}

LyapOperator build_operator(const MatrixXd& A,
                            const std::vector<MatrixXd>& C) {
  LyapOperator op;
  op.n = A.rows();
  op.A = A;
  op.C = C;
  const Index N = op.n * (op.n + 1) / 2;
  op.matrix_rep.resize(N, N);
  for (Index j = 0; j < N; ++j) {
    VectorXd e = VectorXd::Zero(N);
    e[j] = 1.0;
    op.matrix_rep.col(j) = svec(apply_lyap(A, C, unsvec(e)));
  }
  return op;
}

double spectral_abscissa(const LyapOperator& op) {
  return spectrum(op.matrix_rep).max_real_part;
}

double spectral_abscissa(const MatrixXd& A, const std::vector<MatrixXd>& C) {
  return spectral_abscissa(build_operator(A, C));
}

bool is_mean_square_stable(const MatrixXd& A, const std::vector<MatrixXd>& C,
                           const Tolerances& tol) {
  return spectral_abscissa(A, C) < -tol.stab_tol;
}

SymMatrix solve_generalized_lyapunov(const LyapOperator& op,
                                     const SymMatrix& W,
                                     const Tolerances& tol) {
  LinearSolveResult sol;
  try {
    sol = solve_linear(op.matrix_rep, -svec(W), tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix) {
      throw Error(ErrorCode::SingularLyapunov,
                  "Lyapunov operator matrix is singular; the system is on "
                  "the stability boundary");
    }
    throw;
  }
  return unsvec(VectorXd(sol.X));
}

SymMatrix solve_generalized_lyapunov(const MatrixXd& A,
                                     const std::vector<MatrixXd>& C,
                                     const SymMatrix& W,
                                     const Tolerances& tol) {
  return solve_generalized_lyapunov(build_operator(A, C), W, tol);
}

}  // namespace gtare
