#include "qdt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdt/errors.hpp"
#include "qdt/rates.hpp"

namespace qdt {

namespace {

constexpr double kDriftTol = 1e-9;
constexpr double kStabilityFactor = 0.1;
constexpr double kRelaxationFactor = 20.0;
constexpr double kFallbackHorizon = 1e4;

void check_probability_vector(const std::vector<double>& p, std::size_t n) {
  require(p.size() == n, ErrorKind::InvalidParameter, "initial state has the wrong dimension");
  double sum = 0.0;
  for (double value : p) {
    require(std::isfinite(value) && value >= -1e-12, ErrorKind::InvalidParameter,
            "initial state must be a probability vector");
    sum += value;
  }
  require(std::abs(sum - 1.0) <= 1e-9, ErrorKind::InvalidParameter,
          "initial state must sum to one");
}

}  // namespace

Trajectory integrate(const RateMatrix& rates, std::vector<double> p0, double t_final, double dt,
                     int sample_stride) {
  const auto n = static_cast<Eigen::Index>(rates.size());
  check_probability_vector(p0, rates.size());
  require(std::isfinite(t_final) && t_final >= 0.0, ErrorKind::InvalidParameter,
          "t_final must be >= 0");
  require(std::isfinite(dt) && dt > 0.0, ErrorKind::InvalidParameter, "dt must be > 0");
  require(sample_stride >= 1, ErrorKind::InvalidParameter, "sample_stride must be >= 1");
  const double max_diagonal = rates.generator.diagonal().cwiseAbs().maxCoeff();
  require(max_diagonal == 0.0 || dt < kStabilityFactor / max_diagonal, ErrorKind::StepSize,
          "dt violates the stability guard dt < 0.1 / max|W_ii|");

  const Eigen::MatrixXd& w = rates.generator;
  Eigen::VectorXd p = Eigen::Map<const Eigen::VectorXd>(p0.data(), n);

  Trajectory trajectory;
  const auto record = [&](double time) {
    const double drift = std::abs(p.sum() - 1.0);
    require(drift <= kDriftTol, ErrorKind::Solver,
            "integration drifted off the probability simplex");
    p /= p.sum();
    trajectory.times.push_back(time);
    trajectory.states.emplace_back(p.data(), p.data() + n);
  };

  record(0.0);
  const auto steps = static_cast<long long>(std::ceil(t_final / dt));
  Eigen::VectorXd k1(n), k2(n), k3(n), k4(n);
  for (long long step = 1; step <= steps; ++step) {
    k1.noalias() = w * p;
    k2.noalias() = w * (p + 0.5 * dt * k1);
    k3.noalias() = w * (p + 0.5 * dt * k2);
    k4.noalias() = w * (p + dt * k3);
    p += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (step % sample_stride == 0 || step == steps) {
      record(static_cast<double>(step) * dt);
    }
  }
  return trajectory;
}

std::vector<double> gibbs_state(const SystemSpec& system, double beta, double mu) {
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::InvalidParameter,
          "gibbs_state: beta > 0 violated");
  require(std::isfinite(mu), ErrorKind::InvalidParameter, "gibbs_state: mu must be finite");
  const auto basis = build_eigenbasis(system);
  std::vector<double> exponents(basis.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < basis.size(); ++i) {
    exponents[i] = -beta * (basis[i].energy - mu * basis[i].total_occupation());
    top = std::max(top, exponents[i]);
  }
  std::vector<double> populations(basis.size());
  double norm = 0.0;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    populations[i] = std::exp(exponents[i] - top);
    norm += populations[i];
  }
  for (double& value : populations) value /= norm;
  return populations;
}

double relaxation_time(const RateMatrix& rates) {
  const Eigen::EigenSolver<Eigen::MatrixXd> solver(rates.generator);
  const auto eigenvalues = solver.eigenvalues();
  double scale = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i)
    scale = std::max(scale, std::abs(eigenvalues(i).real()));
  double slowest = std::numeric_limits<double>::infinity();
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    const double magnitude = std::abs(eigenvalues(i).real());
    if (magnitude > 1e-12 * std::max(1.0, scale)) slowest = std::min(slowest, magnitude);
  }
  if (!std::isfinite(slowest)) return kFallbackHorizon;
  return std::min(kRelaxationFactor / slowest, kFallbackHorizon);
}

std::vector<double> integrate_to_steady(const RateMatrix& rates, std::vector<double> p0) {
  const double horizon = relaxation_time(rates);
  const double max_diagonal = rates.generator.diagonal().cwiseAbs().maxCoeff();
  const double dt = max_diagonal == 0.0 ? horizon : 0.5 * kStabilityFactor / max_diagonal;
  const auto steps = static_cast<long long>(std::ceil(horizon / dt));
  const int stride = static_cast<int>(std::max<long long>(1, steps));
  return integrate(rates, std::move(p0), horizon, dt, stride).final_state();
}

double relative_entropy(const std::vector<double>& p, const std::vector<double>& q) {
  require(p.size() == q.size(), ErrorKind::InvalidParameter,
          "relative_entropy: dimension mismatch");
  double divergence = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    divergence += p[i] * std::log(p[i] / q[i]);
  }
  return divergence;
}

}  // namespace qdt
