#ifndef GTARE_CERTIFY_HPP
#define GTARE_CERTIFY_HPP

#include <optional>
#include <vector>

#include "gtare/inner_are.hpp"
#include "gtare/model.hpp"

namespace gtare {

enum class CertificateFailure {
  None,
  ClosedLoopUnstable,
  AreSolveFailed,
  SignConditionViolated,
};

struct CertificateReport {
  MatrixXd L;  // m2 x n candidate gain
  bool admissible = false;
  std::optional<SymMatrix> P_tilde;
  CertificateFailure failure_reason = CertificateFailure::None;
  std::string failure_detail;
};

/// Decoupled system obtained by playing u2 = (K2(0) + L) x against the
/// player-1 optimal response channel.
struct DecoupledData {
  MatrixXd A_L;               // A + B1 K1(0) + B2 K2(0) + B2 L
  std::vector<MatrixXd> C_L;  // C_l + D1l K1(0) + D2l K2(0) + D2l L
  SymMatrix Q_L;              // Q - S(0)^T R(0)^{-1} S(0) + L^T R22 L
  MatrixXd S_L;               // R12 L, m1 x n
};

DecoupledData decoupled_data(const GtareProblem& p, const MatrixXd& L,
                             const Tolerances& tol = {});

/// Admissibility of L: stable decoupled loop, solvable negative-orientation
/// ARE for P_tilde, and R11 + sum D1^T P_tilde D1 negative definite.
CertificateReport check_certificate(const GtareProblem& p, const MatrixXd& L,
                                    const Tolerances& tol = {});

/// eig_min(P_tilde - P_k - Z_k); the upper-bound invariant needs >= -1e-6.
double upper_bound_check(const SymMatrix& P_tilde, const SymMatrix& P_k,
                         const SymMatrix& Z_k);

/// Deterministic candidate gains for experimentation: zero plus scaled
/// LQR-like gains on the (B2, D2) channel. Never invoked by the solver.
std::vector<MatrixXd> candidate_gains(const GtareProblem& p,
                                      const Tolerances& tol = {});

}  // namespace gtare

#endif  // GTARE_CERTIFY_HPP
