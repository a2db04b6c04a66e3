#ifndef GTARE_SIM_HPP
#define GTARE_SIM_HPP

#include <cstdint>
#include <vector>

#include "gtare/model.hpp"

namespace gtare {

enum class Scheme { euler_maruyama };

struct SimConfig {
  VectorXd x0;
  double dt = 1e-3;
  double horizon = 10.0;
  int paths = 2000;
  std::uint64_t seed = 0;
  Scheme scheme = Scheme::euler_maruyama;
};

/// Aggregated closed-loop trajectory data. Per-step state is kept for the
/// cross-path mean and for one sample path (path 0); per-path data is kept
/// for the final state and the truncated cost integral. The full
/// paths x steps x n tensor is deliberately not stored (see README).
struct TrajectoryBatch {
  VectorXd times;          // steps+1 grid points 0, dt, ..., horizon
  MatrixXd mean_states;    // (steps+1) x n, mean over paths
  MatrixXd sample_states;  // (steps+1) x n, path 0
  MatrixXd sample_u1;      // (steps+1) x m1, path 0
  MatrixXd sample_u2;      // (steps+1) x m2, path 0
  MatrixXd final_states;   // paths x n
  VectorXd cost_samples;   // paths, trapezoidal truncated cost
  double dt = 0.0;
  double horizon = 0.0;
  int paths = 0;
};

/// Euler-Maruyama simulation of the closed loop u_i = K_i x. Deterministic
/// given the seed: each path draws from its own counter-based substream.
TrajectoryBatch simulate(const GtareProblem& p, const Gains& g,
                         const SimConfig& cfg);

/// Mean and standard error of the per-path truncated costs.
std::pair<double, double> estimate_cost(const GtareProblem& p,
                                        const TrajectoryBatch& batch);

/// Crude bound on the cost mass beyond the horizon for a mean-square
/// stable loop with the given Lyapunov abscissa: scale * exp(abscissa * T).
double tail_allowance(double abscissa, double horizon, double scale);

}  // namespace gtare

#endif  // GTARE_SIM_HPP
