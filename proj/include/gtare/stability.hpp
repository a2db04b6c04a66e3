#ifndef GTARE_STABILITY_HPP
#define GTARE_STABILITY_HPP

#include <vector>

#include "gtare/numerics.hpp"

namespace gtare {

/// Matrix representation, on svec coordinates, of the Lyapunov-type
/// operator L*(S) = S A + A^T S + sum_l C_l^T S C_l on symmetric matrices.
struct LyapOperator {
  Index n = 0;
  MatrixXd A;
  std::vector<MatrixXd> C;
  MatrixXd matrix_rep;  // N x N, N = n(n+1)/2
};

LyapOperator build_operator(const MatrixXd& A, const std::vector<MatrixXd>& C);

/// Apply L* directly (no operator matrix needed).
SymMatrix apply_lyap(const MatrixXd& A, const std::vector<MatrixXd>& C,
                     const SymMatrix& S);

/// Max real part of the operator spectrum. The system is mean-square
/// stable iff this is < -stab_tol.
double spectral_abscissa(const LyapOperator& op);
double spectral_abscissa(const MatrixXd& A, const std::vector<MatrixXd>& C);

bool is_mean_square_stable(const MatrixXd& A, const std::vector<MatrixXd>& C,
                           const Tolerances& tol = {});

/// Solve Y A + A^T Y + sum_l C_l^T Y C_l + W = 0 by direct dense
/// factorization of the svec operator matrix. Throws SingularLyapunov.
SymMatrix solve_generalized_lyapunov(const MatrixXd& A,
                                     const std::vector<MatrixXd>& C,
                                     const SymMatrix& W,
                                     const Tolerances& tol = {});
SymMatrix solve_generalized_lyapunov(const LyapOperator& op,
                                     const SymMatrix& W,
                                     const Tolerances& tol = {});

}  // namespace gtare

#endif  // GTARE_STABILITY_HPP
