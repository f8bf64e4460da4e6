#pragma once

#include <vector>

#include "qdt/types.hpp"

namespace qdt {

struct Trajectory {
  std::vector<double> times;
  std::vector<std::vector<double>> states;

  const std::vector<double>& final_state() const { return states.back(); }
};

/// Fixed-step RK4 propagation of dp/dt = W p. Requires dt < 0.1 / max|W_ii|;
/// every recorded sample is renormalized, with the pre-normalization drift
/// checked against 1e-9.
Trajectory integrate(const RateMatrix& rates, std::vector<double> p0, double t_final, double dt,
                     int sample_stride = 1);

/// Grand-canonical populations p_i proportional to exp(-beta (E_i - mu N_i)).
std::vector<double> gibbs_state(const SystemSpec& system, double beta, double mu);

/// 20 / (smallest nonzero |Re eigenvalue| of the generator); falls back to
/// 1e4 time units when no relaxing mode is resolved.
double relaxation_time(const RateMatrix& rates);

/// Convenience: integrate from p0 over the estimated relaxation time and
/// return the final sample.
std::vector<double> integrate_to_steady(const RateMatrix& rates, std::vector<double> p0);

/// Relative entropy sum p_i ln(p_i / q_i); non-increasing along trajectories
/// of the generator whose stationary state is q.
double relative_entropy(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace qdt
