#include "gtare/sim.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace gtare {

namespace {

/// splitmix64: tiny counter-based generator; one independent substream per
/// path so results do not depend on the order paths are simulated in.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t s) : state(s) {}
  std::uint64_t next() {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }
  double uniform() {  // (0, 1)
    return (static_cast<double>(next() >> 11) + 0.5) * 0x1.0p-53;
  }
};

/// Box-Muller over the substream; keeps the spare deviate per path.
struct NormalStream {
  SplitMix64 rng;
  bool has_spare = false;
  double spare = 0.0;
  explicit NormalStream(std::uint64_t s) : rng(s) {}
  double next() {
    if (has_spare) {
      has_spare = false;
      return spare;
    }
    const double u1 = rng.uniform();
    const double u2 = rng.uniform();
    const double rad = std::sqrt(-2.0 * std::log(u1));
    const double ang = 2.0 * std::numbers::pi * u2;
    spare = rad * std::sin(ang);
    has_spare = true;
    return rad * std::cos(ang);
  }
};

std::uint64_t substream_seed(std::uint64_t seed, int path) {
  SplitMix64 mix(seed ^ (0xD1B54A32D192ED03ULL *
                         (static_cast<std::uint64_t>(path) + 1)));
  return mix.next();
}

/// W_cl with x^T W_cl x = the running-cost integrand under u_i = K_i x.
MatrixXd closed_loop_weight(const GtareProblem& p, const Gains& g) {
  MatrixXd W = p.Q.mat();
  W += g.K1.transpose() * p.S1 + p.S1.transpose() * g.K1;
  W += g.K2.transpose() * p.S2 + p.S2.transpose() * g.K2;
  W += g.K1.transpose() * p.R11.mat() * g.K1;
  W += g.K1.transpose() * p.R12 * g.K2 + g.K2.transpose() * p.R12.transpose() * g.K1;
  W += g.K2.transpose() * p.R22.mat() * g.K2;
  return 0.5 * (W + W.transpose());
}

}  // namespace

TrajectoryBatch simulate(const GtareProblem& p, const Gains& g,
                         const SimConfig& cfg) {
  if (g.K1.rows() != p.m1 || g.K1.cols() != p.n || g.K2.rows() != p.m2 ||
      g.K2.cols() != p.n || cfg.x0.size() != p.n) {
    throw Error(ErrorCode::DimensionMismatch, "simulate: shape mismatch");
  }
  if (!(cfg.dt > 0.0) || !(cfg.horizon > 0.0) || cfg.dt > cfg.horizon ||
      cfg.paths < 1) {
    throw Error(ErrorCode::DimensionMismatch,
                "simulate: need 0 < dt <= horizon and paths >= 1");
  }
  const ClosedLoop cl = closed_loop(p, g);
  const MatrixXd W = closed_loop_weight(p, g);
  const Index steps = static_cast<Index>(std::llround(cfg.horizon / cfg.dt));
  const double sqdt = std::sqrt(cfg.dt);

  TrajectoryBatch batch;
  batch.dt = cfg.dt;
  batch.horizon = cfg.horizon;
  batch.paths = cfg.paths;
  batch.times = VectorXd::LinSpaced(steps + 1, 0.0, cfg.dt * double(steps));
  batch.mean_states = MatrixXd::Zero(steps + 1, p.n);
  batch.sample_states = MatrixXd::Zero(steps + 1, p.n);
  batch.sample_u1 = MatrixXd::Zero(steps + 1, p.m1);
  batch.sample_u2 = MatrixXd::Zero(steps + 1, p.m2);
  batch.final_states = MatrixXd::Zero(cfg.paths, p.n);
  batch.cost_samples = VectorXd::Zero(cfg.paths);

  for (int path = 0; path < cfg.paths; ++path) {
    NormalStream normals(substream_seed(cfg.seed, path));
    VectorXd x = cfg.x0;
    double cost = 0.0;
    double integrand_prev = x.dot(W * x);
    batch.mean_states.row(0) += x.transpose();
    if (path == 0) {
      batch.sample_states.row(0) = x.transpose();
      batch.sample_u1.row(0) = (g.K1 * x).transpose();
      batch.sample_u2.row(0) = (g.K2 * x).transpose();
    }
    for (Index step = 0; step < steps; ++step) {
      VectorXd xn = x + cfg.dt * (cl.A * x);
      for (Index l = 0; l < p.r; ++l) {
        xn += (sqdt * normals.next()) * (cl.C[l] * x);
      }
      if (!xn.allFinite()) {
        throw Error(ErrorCode::NonFinite,
                    "trajectory overflow at path " + std::to_string(path) +
                        ", step " + std::to_string(step + 1));
      }
      x = xn;
      const double integrand = x.dot(W * x);
      cost += 0.5 * cfg.dt * (integrand_prev + integrand);
      integrand_prev = integrand;
      batch.mean_states.row(step + 1) += x.transpose();
      if (path == 0) {
        batch.sample_states.row(step + 1) = x.transpose();
        batch.sample_u1.row(step + 1) = (g.K1 * x).transpose();
        batch.sample_u2.row(step + 1) = (g.K2 * x).transpose();
      }
    }
    batch.final_states.row(path) = x.transpose();
    batch.cost_samples[path] = cost;
  }
  batch.mean_states /= static_cast<double>(cfg.paths);
  return batch;
}

std::pair<double, double> estimate_cost(const GtareProblem& p,
                                        const TrajectoryBatch& batch) {
  (void)p;
  const Index m = batch.cost_samples.size();
  if (m == 0) {
    throw Error(ErrorCode::DimensionMismatch, "estimate_cost: empty batch");
  }
  const double mean = batch.cost_samples.mean();
  if (m == 1) return {mean, 0.0};
  const double var =
      (batch.cost_samples.array() - mean).square().sum() / double(m - 1);
  return {mean, std::sqrt(var / double(m))};
}

double tail_allowance(double abscissa, double horizon, double scale) {
  if (abscissa >= 0.0) return std::abs(scale);
  return std::abs(scale) * std::exp(abscissa * horizon);
}

}  // namespace gtare
