#include "gtare/numerics.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>

namespace gtare {

SymMatrix::SymMatrix(const MatrixXd& m, double sym_tol_scale) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                "SymMatrix requires a square matrix");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol_scale * scale) {
    throw Error(ErrorCode::DimensionMismatch,
                "matrix is not symmetric within tolerance (asymmetry " +
                    std::to_string(asym) + ")");
  }
  mat_ = 0.5 * (m + m.transpose());
}

VectorXd svec(const SymMatrix& s) {
  const Index n = s.dim();
  VectorXd v(n * (n + 1) / 2);
  const double rt2 = std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      v[k++] = (i == j) ? s(i, j) : rt2 * s(i, j);
    }
  }
  return v;
}

SymMatrix unsvec(const VectorXd& v) {
  if (!is_triangular_number(v.size())) {
    throw Error(ErrorCode::NonTriangularLength,
                "vector length " + std::to_string(v.size()) +
                    " is not a triangular number");
  }
  Index n = 0;
  while (n * (n + 1) / 2 < v.size()) ++n;
  MatrixXd m(n, n);
  const double rt2 = std::sqrt(2.0);
  Index k = 0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      const double x = (i == j) ? v[k] : v[k] / rt2;
      m(i, j) = x;
      m(j, i) = x;
      ++k;
    }
  }
  return SymMatrix(m);
}

double eig_min_sym(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.mat(),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double eig_max_sym(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.mat(),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues().maxCoeff();
}

VectorXd eig_sym(const SymMatrix& s) {
  Eigen::SelfAdjointEigenSolver<MatrixXd> es(s.mat(),
                                             Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

SpectrumSummary spectrum(const MatrixXd& m) {
  Eigen::EigenSolver<MatrixXd> es(m, false);
  SpectrumSummary out;
  out.eigenvalues.reserve(static_cast<size_t>(m.rows()));
  double max_re = -std::numeric_limits<double>::infinity();
  for (Index i = 0; i < m.rows(); ++i) {
    const std::complex<double> ev = es.eigenvalues()[i];
    out.eigenvalues.push_back(ev);
    max_re = std::max(max_re, ev.real());
  }
  out.max_real_part = max_re;
  return out;
}

LinearSolveResult solve_linear(const MatrixXd& A, const MatrixXd& B,
                               const Tolerances& tol) {
  if (A.rows() != A.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "solve_linear: A not square");
  }
  if (A.rows() != B.rows()) {
    throw Error(ErrorCode::DimensionMismatch,
                "solve_linear: incompatible right-hand side");
  }
  Eigen::FullPivLU<MatrixXd> lu(A);
  lu.setThreshold(Eigen::Default);
  if (lu.rank() < A.rows()) {
    throw Error(ErrorCode::SingularMatrix,
                "matrix is rank-deficient at tolerance");
  }
  LinearSolveResult out;
  out.X = lu.solve(B);
  const double rc = lu.rcond();
  out.cond_estimate =
      rc > 0 ? 1.0 / rc : std::numeric_limits<double>::infinity();
  out.ill_conditioned = out.cond_estimate > tol.cond_warn;
  return out;
}

}  // namespace gtare
