#ifndef GTARE_NUMERICS_HPP
#define GTARE_NUMERICS_HPP

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "gtare/errors.hpp"

namespace gtare {

using Eigen::Index;
using Eigen::MatrixXd;
using Eigen::VectorXd;

/// Central tolerance configuration shared by all modules.
struct Tolerances {
  double sym_tol_scale = 1e-12;  // symmetry check: scale * max(1, max|entry|)
  double psd_tol = 1e-8;
  double lin_tol = 1e-10;
  double cond_warn = 1e12;
  double stab_tol = 1e-9;   // strict-inequality margin for Spec in C^-
  double lyap_tol = 1e-9;
  double inner_tol = 1e-11;
  int max_inner = 50;
  double outer_tol = 1e-7;
  int max_outer = 100;
};

/// Square real symmetric matrix. Construction symmetrizes the input and
/// rejects matrices whose asymmetry exceeds the tolerance.
class SymMatrix {
 public:
  SymMatrix() = default;
  explicit SymMatrix(const MatrixXd& m, double sym_tol_scale = 1e-12);

  static SymMatrix Zero(Index n) { return SymMatrix(MatrixXd::Zero(n, n)); }
  static SymMatrix Identity(Index n) {
    return SymMatrix(MatrixXd::Identity(n, n));
  }

  Index dim() const { return mat_.rows(); }
  const MatrixXd& mat() const { return mat_; }
  double operator()(Index i, Index j) const { return mat_(i, j); }

 private:
  MatrixXd mat_;
};

/// Forced symmetrization (M + M^T)/2, used after every ARE/Lyapunov solve.
inline SymMatrix symmetrize(const MatrixXd& m) {
  return SymMatrix(0.5 * (m + m.transpose()), 1.0);
}

struct SpectrumSummary {
  std::vector<std::complex<double>> eigenvalues;
  double max_real_part = 0.0;
};

struct LinearSolveResult {
  MatrixXd X;
  double cond_estimate = 0.0;
  bool ill_conditioned = false;
};

/// Symmetric vectorization: row-major upper triangle, off-diagonals scaled
/// by sqrt(2) so that <svec(S1), svec(S2)> = Tr(S1^T S2).
VectorXd svec(const SymMatrix& s);
SymMatrix unsvec(const VectorXd& v);

/// Smallest eigenvalue of a symmetric matrix.
double eig_min_sym(const SymMatrix& s);
double eig_max_sym(const SymMatrix& s);
/// All eigenvalues of a symmetric matrix, ascending.
VectorXd eig_sym(const SymMatrix& s);

/// Eigenvalues of a general square matrix with their maximal real part.
SpectrumSummary spectrum(const MatrixXd& m);

/// Solve A X = B by LU with a condition estimate. Throws SingularMatrix if
/// A is rank-deficient at tolerance; flags (does not throw) when the
/// condition estimate exceeds cond_warn.
LinearSolveResult solve_linear(const MatrixXd& A, const MatrixXd& B,
                               const Tolerances& tol = {});

inline bool is_triangular_number(Index len) {
  Index n = 0;
  while (n * (n + 1) / 2 < len) ++n;
  return n * (n + 1) / 2 == len;
}

}  // namespace gtare

#endif  // GTARE_NUMERICS_HPP
