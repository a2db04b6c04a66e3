#ifndef GTARE_OUTER_SOLVER_HPP
#define GTARE_OUTER_SOLVER_HPP

#include <functional>
#include <optional>
#include <vector>

#include "gtare/inner_are.hpp"
#include "gtare/model.hpp"

namespace gtare {

/// Snapshot of one outer step: the subproblem at P^(k), its inner solution
/// Z^(k), and the diagnostics used by the convergence-theory audits.
struct IterationRecord {
  int k = 0;
  SymMatrix P;               // P^(k)
  SymMatrix Z;               // Z^(k), inner solution at P^(k)
  MatrixXd A_k;              // A + B1 K1(P^(k)) + B2 K2(P^(k))
  std::vector<MatrixXd> C_k;
  SymMatrix M_k;             // G(P^(k)), the subproblem constant term
  MatrixXd N_k;              // [N1; N2] = n_matrix(P^(k), Z^(k))
  VectorXd z_eigs, m_eigs;
  double z_norm = 0.0;
  double residual_norm = 0.0;  // ||G(P^(k))||_F
  InnerSolveReport inner;
  // Theorem audits at P^(k) + Z^(k):
  double a_abscissa = 0.0;   // Lyapunov abscissa of the T_(k)-closed loop
  double c_deviation = 0.0;  // relative deviation of the c_k identity
  double b_slack = 0.0;      // eig_min(P_tilde - P^(k) - Z^(k)), if audited
  bool b_audited = false;
};

struct SolveOptions {
  double outer_tol = 1e-7;
  int max_outer = 100;
  std::optional<MatrixXd> certificate;  // gain L, m2 x n
  std::function<void(const IterationRecord&)> observer;
  Tolerances tol;
};

struct SolveReport {
  SymMatrix P_star;
  Gains gains;
  double residual_norm = 0.0;     // ||G(P_star)||_F
  int outer_iters = 0;            // history holds records k = 0..outer_iters
  std::vector<IterationRecord> history;
  std::optional<MatrixXd> certificate_used;
  std::optional<SymMatrix> p_tilde;  // upper bound from the certificate
  double stability_abscissa = 0.0;   // closed loop at K(P_star)
};

/// Inner subproblem at P^(0) = 0.
DefiniteAre init_subproblem(const GtareProblem& p, const Tolerances& tol = {});

/// Inner subproblem at P_k: closed-loop (A_k, C_k,l), player-2 channel
/// (B2, D2), constant term M_k = G(P_k), weight R22(P_k).
/// Throws NegativeConstantTerm if eig_min(M_k) < -1e-6.
DefiniteAre build_subproblem(const GtareProblem& p, const SymMatrix& P_k,
                             const Tolerances& tol = {});

/// One outer step: P_k = P_{k-1} + Z_{k-1}, then the inner solve at P_k.
IterationRecord outer_step(const GtareProblem& p,
                           const IterationRecord& prev,
                           const SolveOptions& options = {});

/// The dual-layer iteration from P^(0) = 0 to the stabilizing solution.
SolveReport solve_gtare(const GtareProblem& p,
                        const SolveOptions& options = {});

/// Max relative deviation between the evolve-recursion forms of
/// (A_k, C_k,l, M_k) and the closed forms stored in the records.
double recursion_audit(const GtareProblem& p, const IterationRecord& prev,
                       const IterationRecord& cur, const Tolerances& tol = {});

}  // namespace gtare

#endif  // GTARE_OUTER_SOLVER_HPP
