#ifndef GTARE_MODEL_HPP
#define GTARE_MODEL_HPP

#include <string>
#include <vector>

#include "gtare/numerics.hpp"

namespace gtare {

/// Constant coefficients of the zero-sum stochastic LQ game. C, D1 and D2
/// are indexed by noise channel l = 0..r-1; D1[l] and D2[l] are the two
/// players' diffusion input matrices for channel l.
struct GtareProblem {
  Index n = 0, m1 = 0, m2 = 0, r = 0;
  MatrixXd A;
  std::vector<MatrixXd> C;
  MatrixXd B1, B2;
  std::vector<MatrixXd> D1, D2;
  SymMatrix Q;
  MatrixXd S1, S2;
  SymMatrix R11, R22;
  MatrixXd R12;  // R21 is defined as R12^T and never stored
};

/// The P-dependent blocks Q(P), S(P), R(P).
struct CoefficientBlocks {
  SymMatrix QP;
  MatrixXd SP;    // (m1+m2) x n, [S1(P); S2(P)]
  SymMatrix RP;   // (m1+m2) x (m1+m2)
  MatrixXd R11P, R12P, R22P;
};

struct Gains {
  MatrixXd K1;  // m1 x n
  MatrixXd K2;  // m2 x n
};

struct ClosedLoop {
  MatrixXd A;               // A + B1 K1 + B2 K2
  std::vector<MatrixXd> C;  // C_l + D1[l] K1 + D2[l] K2
};

/// Dimension/symmetry/finiteness diagnostics; empty means valid.
std::vector<std::string> validate(const GtareProblem& p,
                                  const Tolerances& tol = {});

CoefficientBlocks coefficient_blocks(const GtareProblem& p,
                                     const SymMatrix& P);

/// [K1; K2] = -R(P)^{-1} [S1(P); S2(P)]. Throws SingularRP.
Gains gains(const GtareProblem& p, const SymMatrix& P,
            const Tolerances& tol = {});

/// G(P) = Q(P) - S(P)^T R(P)^{-1} S(P).
SymMatrix residual_G(const GtareProblem& p, const SymMatrix& P,
                     const Tolerances& tol = {});

/// P in Dom G iff R22(P) > 0 and R11(P) < 0 (strict, at psd_tol).
bool in_dom_G(const GtareProblem& p, const SymMatrix& P,
              const Tolerances& tol = {});

/// Schur complement R11(P) - R12(P) R22(P)^{-1} R12(P)^T.
SymMatrix schur_r22(const GtareProblem& p, const SymMatrix& P,
                    const Tolerances& tol = {});

/// Stacked auxiliary matrix [N1(P,Z); N2(P,Z)], linear in Z.
MatrixXd n_matrix(const GtareProblem& p, const SymMatrix& P,
                  const SymMatrix& Z, const Tolerances& tol = {});

ClosedLoop closed_loop(const GtareProblem& p, const SymMatrix& P,
                       const Tolerances& tol = {});
ClosedLoop closed_loop(const GtareProblem& p, const Gains& g);

}  // namespace gtare

#endif  // GTARE_MODEL_HPP
