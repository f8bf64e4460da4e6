#include "qdt/rates.hpp"

#include <cmath>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

// Beyond this exponent the occupation is exactly 0 or 1 at double precision.
constexpr double kExponentClamp = 500.0;

const ReservoirSpec& find_reservoir(const std::vector<ReservoirSpec>& reservoirs,
                                    const std::string& id) {
  for (const auto& r : reservoirs)
    if (r.id == id) return r;
  raise(ErrorKind::Configuration, "coupling references unknown reservoir '" + id + "'");
}

}  // namespace

double fermi_plus(double beta, double mu, double omega) {
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::InvalidParameter,
          "fermi_plus: beta > 0 violated");
  require(std::isfinite(mu) && std::isfinite(omega), ErrorKind::InvalidParameter,
          "fermi_plus: mu and omega must be finite");
  const double x = beta * (omega - mu);
  if (x > kExponentClamp) return 0.0;
  if (x < -kExponentClamp) return 1.0;
  return 1.0 / (1.0 + std::exp(x));
}

double fermi_minus(double beta, double mu, double omega) {
  return 1.0 - fermi_plus(beta, mu, omega);
}

std::vector<EigenState> build_eigenbasis(const SystemSpec& system) {
  if (system.dots.size() == 1) {
    const double eps = system.dots[0].epsilon;
    return {{'A', {0}, 0.0}, {'B', {1}, eps}};
  }
  const double eps_b = system.dot(DotLabel::Bottom).epsilon;
  const double eps_u = system.dot(DotLabel::Upper).epsilon;
  const double kappa = system.kappa();
  // Occupations ordered (bottom, upper).
  return {{'A', {0, 0}, 0.0},
          {'B', {1, 0}, eps_b},
          {'C', {0, 1}, eps_u},
          {'D', {1, 1}, eps_b + eps_u + kappa}};
}

TransitionGraph build_transition_graph(const SystemSpec& system,
                                       const std::vector<ReservoirSpec>& reservoirs) {
  TransitionGraph graph;
  graph.basis = build_eigenbasis(system);
  const std::size_t n = graph.basis.size();
  for (const auto& coupling : system.couplings) {
    const DotSpec& dot = system.dot(coupling.dot);
    const ReservoirSpec& lead = find_reservoir(reservoirs, coupling.reservoir_id);
    require(spin_compatible(dot.spin, lead.spin), ErrorKind::Configuration,
            "spin mismatch: dot '" + std::string(to_string(dot.label)) +
                "' cannot couple to reservoir '" + lead.id + "'");
    const std::size_t pos = system.dot_position(coupling.dot);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto& occ_i = graph.basis[i].occupations;
        const auto& occ_j = graph.basis[j].occupations;
        if (occ_i[pos] != 0 || occ_j[pos] != 1) continue;
        bool others_equal = true;
        for (std::size_t d = 0; d < occ_i.size(); ++d)
          if (d != pos && occ_i[d] != occ_j[d]) others_equal = false;
        if (!others_equal) continue;
        const double omega = graph.basis[j].energy - graph.basis[i].energy;
        graph.transitions.push_back(
            {i, j, omega, lead.id, coupling.dot, Direction::Excitation});
        graph.transitions.push_back(
            {j, i, -omega, lead.id, coupling.dot, Direction::Deexcitation});
      }
    }
  }
  return graph;
}

RateMatrix build_rate_matrix(const TransitionGraph& graph,
                             const std::vector<ReservoirSpec>& reservoirs) {
  const auto n = static_cast<Eigen::Index>(graph.basis.size());
  RateMatrix rates;
  rates.generator = Eigen::MatrixXd::Zero(n, n);
  rates.channels.reserve(graph.transitions.size());
  for (const auto& t : graph.transitions) {
    const ReservoirSpec& lead = find_reservoir(reservoirs, t.reservoir);
    // The +/- channel pair shares one transition energy: the excitation
    // energy. De-excitations store the negated omega, so flip it back here.
    const double rate = t.direction == Direction::Excitation
                            ? lead.gamma * fermi_plus(lead.beta, lead.mu, t.omega)
                            : lead.gamma * fermi_minus(lead.beta, lead.mu, -t.omega);
    rates.generator(static_cast<Eigen::Index>(t.to), static_cast<Eigen::Index>(t.from)) += rate;
    rates.channels.push_back({t, rate});
  }
  for (Eigen::Index c = 0; c < n; ++c) {
    rates.generator(c, c) = 0.0;
    rates.generator(c, c) = -rates.generator.col(c).sum();
  }
  return rates;
}

}  // namespace qdt
