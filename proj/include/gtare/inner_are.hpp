#ifndef GTARE_INNER_ARE_HPP
#define GTARE_INNER_ARE_HPP

#include <vector>

#include "gtare/numerics.hpp"
#include "gtare/stability.hpp"

namespace gtare {

enum class Orientation { positive, negative };

/// Self-contained stochastic ARE with a sign-definite quadratic weight:
///   P A + A^T P + sum_l C_l^T P C_l + Qc
///   - (B^T P + sum_l D_l^T P C_l + Sc)^T (Rc + sum_l D_l^T P D_l)^{-1}
///     (B^T P + sum_l D_l^T P C_l + Sc) = 0.
/// orientation says which sign Rc + sum D^T P D is expected to keep along
/// the Newton iteration.
struct DefiniteAre {
  Index n = 0, m = 0, r = 0;
  MatrixXd A;
  std::vector<MatrixXd> C;
  MatrixXd B;
  std::vector<MatrixXd> D;
  SymMatrix Qc;
  MatrixXd Sc;   // m x n, may be zero
  SymMatrix Rc;  // m x m
  Orientation orientation = Orientation::positive;
};

/// Validates shapes and the Rc definiteness required by orientation.
DefiniteAre make_definite_are(MatrixXd A, std::vector<MatrixXd> C, MatrixXd B,
                              std::vector<MatrixXd> D, SymMatrix Qc,
                              MatrixXd Sc, SymMatrix Rc,
                              Orientation orientation,
                              const Tolerances& tol = {});

struct InnerSolveReport {
  SymMatrix Z;
  MatrixXd T;  // final gain, m x n
  int newton_iters = 0;
  double residual_norm = 0.0;
  double monotone_violation = 0.0;
};

/// Gain map T(P) = -(Rc + sum D^T P D)^{-1} (B^T P + sum D^T P C + Sc).
MatrixXd gain_map(const DefiniteAre& are, const SymMatrix& P,
                  const Tolerances& tol = {});

/// Frobenius norm of the ARE residual at P.
double are_residual_norm(const DefiniteAre& are, const SymMatrix& P,
                         const Tolerances& tol = {});

/// 0 in Gamma: the orientation-normalized block [[Qc, Sc^T],[Sc, Rc]] is
/// PSD at tolerance and Rc is definite.
bool check_zero_in_gamma(const DefiniteAre& are, const Tolerances& tol = {});

/// First candidate gain (zero first, then hints) whose closed loop is
/// mean-square stable. Throws StabilizerNotFound.
MatrixXd find_initial_gain(const DefiniteAre& are,
                           const std::vector<MatrixXd>& hints,
                           const Tolerances& tol = {});

/// Newton-Kleinman iteration from a stabilizing initial gain; converges
/// monotonically to the maximal (= stabilizing) solution.
InnerSolveReport newton_kleinman(const DefiniteAre& are, const MatrixXd& T0,
                                 double inner_tol = 1e-11, int max_iters = 50,
                                 const Tolerances& tol = {});

}  // namespace gtare

#endif  // GTARE_INNER_ARE_HPP
