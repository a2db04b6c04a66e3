#include "gtare/model.hpp"

#include <cmath>

namespace gtare {

namespace {

void check_shape(std::vector<std::string>& out, const MatrixXd& m,
                 Index rows, Index cols, const std::string& name) {
  if (m.rows() != rows || m.cols() != cols) {
    out.push_back(name + ": expected " + std::to_string(rows) + "x" +
                  std::to_string(cols) + ", got " + std::to_string(m.rows()) +
                  "x" + std::to_string(m.cols()));
  } else if (!m.allFinite()) {
    out.push_back(name + ": contains non-finite entries");
  }
}

void check_sym(std::vector<std::string>& out, const MatrixXd& m,
               const std::string& name, double sym_tol_scale) {
  if (m.rows() != m.cols()) return;
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double asym = (m - m.transpose()).cwiseAbs().maxCoeff();
  if (asym > sym_tol_scale * scale) {
    out.push_back(name + ": not symmetric within tolerance");
  }
}

}  // namespace

std::vector<std::string> validate(const GtareProblem& p,
                                  const Tolerances& tol) {
  std::vector<std::string> out;
  if (p.n <= 0 || p.m1 <= 0 || p.m2 <= 0 || p.r <= 0) {
    out.push_back("dimensions n, m1, m2, r must all be positive");
    return out;
  }
  check_shape(out, p.A, p.n, p.n, "A");
  check_shape(out, p.B1, p.n, p.m1, "B1");
  check_shape(out, p.B2, p.n, p.m2, "B2");
  check_shape(out, p.Q.mat(), p.n, p.n, "Q");
  check_shape(out, p.S1, p.m1, p.n, "S1");
  check_shape(out, p.S2, p.m2, p.n, "S2");
  check_shape(out, p.R11.mat(), p.m1, p.m1, "R11");
  check_shape(out, p.R12, p.m1, p.m2, "R12");
  check_shape(out, p.R22.mat(), p.m2, p.m2, "R22");
  if (static_cast<Index>(p.C.size()) != p.r)
    out.push_back("C: expected " + std::to_string(p.r) + " matrices");
  if (static_cast<Index>(p.D1.size()) != p.r)
    out.push_back("D1: expected " + std::to_string(p.r) + " matrices");
  if (static_cast<Index>(p.D2.size()) != p.r)
    out.push_back("D2: expected " + std::to_string(p.r) + " matrices");
  for (size_t l = 0; l < p.C.size(); ++l)
    check_shape(out, p.C[l], p.n, p.n, "C[" + std::to_string(l) + "]");
  for (size_t l = 0; l < p.D1.size(); ++l)
    check_shape(out, p.D1[l], p.n, p.m1, "D1[" + std::to_string(l) + "]");
  for (size_t l = 0; l < p.D2.size(); ++l)
    check_shape(out, p.D2[l], p.n, p.m2, "D2[" + std::to_string(l) + "]");
  check_sym(out, p.Q.mat(), "Q", tol.sym_tol_scale);
  check_sym(out, p.R11.mat(), "R11", tol.sym_tol_scale);
  check_sym(out, p.R22.mat(), "R22", tol.sym_tol_scale);
  return out;
}

CoefficientBlocks coefficient_blocks(const GtareProblem& p,
                                     const SymMatrix& P) {
  const MatrixXd& Pm = P.mat();
  MatrixXd QP = Pm * p.A + p.A.transpose() * Pm + p.Q.mat();
  MatrixXd S1P = p.B1.transpose() * Pm + p.S1;
  MatrixXd S2P = p.B2.transpose() * Pm + p.S2;
  MatrixXd R11P = p.R11.mat();
  MatrixXd R12P = p.R12;
  MatrixXd R22P = p.R22.mat();
  for (Index l = 0; l < p.r; ++l) {
    QP += p.C[l].transpose() * Pm * p.C[l];
    S1P += p.D1[l].transpose() * Pm * p.C[l];
    S2P += p.D2[l].transpose() * Pm * p.C[l];
    R11P += p.D1[l].transpose() * Pm * p.D1[l];
    R12P += p.D1[l].transpose() * Pm * p.D2[l];
    R22P += p.D2[l].transpose() * Pm * p.D2[l];
  }
  CoefficientBlocks out;
  out.QP = symmetrize(QP);
  out.SP.resize(p.m1 + p.m2, p.n);
  out.SP << S1P, S2P;
  MatrixXd RP(p.m1 + p.m2, p.m1 + p.m2);
  RP << R11P, R12P, R12P.transpose(), R22P;
  out.RP = symmetrize(RP);
  out.R11P = 0.5 * (R11P + R11P.transpose());
  out.R12P = R12P;
  out.R22P = 0.5 * (R22P + R22P.transpose());
  return out;
}

Gains gains(const GtareProblem& p, const SymMatrix& P, const Tolerances& tol) {
  const CoefficientBlocks b = coefficient_blocks(p, P);
  LinearSolveResult sol;
  try {
    sol = solve_linear(b.RP.mat(), b.SP, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      throw Error(ErrorCode::SingularRP, "R(P) is singular at tolerance");
    throw;
  }
  Gains g;
  g.K1 = -sol.X.topRows(p.m1);
  g.K2 = -sol.X.bottomRows(p.m2);
  return g;
}

SymMatrix residual_G(const GtareProblem& p, const SymMatrix& P,
                     const Tolerances& tol) {
  const CoefficientBlocks b = coefficient_blocks(p, P);
  LinearSolveResult sol;
  try {
    sol = solve_linear(b.RP.mat(), b.SP, tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      throw Error(ErrorCode::SingularRP, "R(P) is singular at tolerance");
    throw;
  }
  return symmetrize(b.QP.mat() - b.SP.transpose() * sol.X);
}

bool in_dom_G(const GtareProblem& p, const SymMatrix& P,
              const Tolerances& tol) {
  const CoefficientBlocks b = coefficient_blocks(p, P);
  const double min22 = eig_min_sym(SymMatrix(b.R22P, 1.0));
  const double max11 = eig_max_sym(SymMatrix(b.R11P, 1.0));
  return min22 > tol.psd_tol && max11 < -tol.psd_tol;
}

SymMatrix schur_r22(const GtareProblem& p, const SymMatrix& P,
                    const Tolerances& tol) {
  const CoefficientBlocks b = coefficient_blocks(p, P);
  LinearSolveResult sol;
  try {
    sol = solve_linear(b.R22P, b.R12P.transpose(), tol);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::SingularMatrix)
      throw Error(ErrorCode::SingularR22, "R22(P) is singular at tolerance");
    throw;
  }
  return symmetrize(b.R11P - b.R12P * sol.X);
}

MatrixXd n_matrix(const GtareProblem& p, const SymMatrix& P,
                  const SymMatrix& Z, const Tolerances& tol) {
  const ClosedLoop cl = closed_loop(p, P, tol);
  const MatrixXd& Zm = Z.mat();
  MatrixXd N1 = p.B1.transpose() * Zm;
  MatrixXd N2 = p.B2.transpose() * Zm;
  for (Index l = 0; l < p.r; ++l) {
    N1 += p.D1[l].transpose() * Zm * cl.C[l];
    N2 += p.D2[l].transpose() * Zm * cl.C[l];
  }
  MatrixXd N(p.m1 + p.m2, p.n);
  N << N1, N2;
  return N;
}

ClosedLoop closed_loop(const GtareProblem& p, const SymMatrix& P,
                       const Tolerances& tol) {
  return closed_loop(p, gains(p, P, tol));
}

ClosedLoop closed_loop(const GtareProblem& p, const Gains& g) {
  ClosedLoop cl;
  cl.A = p.A + p.B1 * g.K1 + p.B2 * g.K2;
  cl.C.reserve(static_cast<size_t>(p.r));
  for (Index l = 0; l < p.r; ++l) {
    cl.C.push_back(p.C[l] + p.D1[l] * g.K1 + p.D2[l] * g.K2);
  }
  return cl;
}

}  // namespace gtare
