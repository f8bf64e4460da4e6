#include "qdt/steady.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/rates.hpp"
#include "qdt/thermo.hpp"

namespace qdt {

namespace {

constexpr double kResidualTol = 1e-12;
constexpr double kNegativePopulationTol = 1e-12;

std::vector<std::vector<std::size_t>> state_components(const RateMatrix& rates) {
  const std::size_t n = rates.size();
  std::vector<int> component(n, -1);
  int count = 0;
  for (std::size_t seed = 0; seed < n; ++seed) {
    if (component[seed] >= 0) continue;
    std::vector<std::size_t> stack{seed};
    component[seed] = count;
    while (!stack.empty()) {
      const std::size_t i = stack.back();
      stack.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i || component[j] >= 0) continue;
        const auto ii = static_cast<Eigen::Index>(i);
        const auto jj = static_cast<Eigen::Index>(j);
        if (rates.generator(jj, ii) != 0.0 || rates.generator(ii, jj) != 0.0) {
          component[j] = count;
          stack.push_back(j);
        }
      }
    }
    ++count;
  }
  std::vector<std::vector<std::size_t>> groups(static_cast<std::size_t>(count));
  for (std::size_t i = 0; i < n; ++i) groups[static_cast<std::size_t>(component[i])].push_back(i);
  return groups;
}

std::string describe_components(const std::vector<std::vector<std::size_t>>& groups) {
  std::ostringstream out;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) out << " | ";
    out << "{";
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      if (k) out << ",";
      out << static_cast<char>('A' + groups[g][k]);
    }
    out << "}";
  }
  return out.str();
}

const RateChannel* find_channel(const RateMatrix& rates, std::size_t from, std::size_t to,
                                std::string_view reservoir) {
  for (const auto& channel : rates.channels) {
    if (channel.transition.from == from && channel.transition.to == to &&
        channel.transition.reservoir == reservoir)
      return &channel;
  }
  return nullptr;
}

}  // namespace

std::vector<double> solve_steady_state(const RateMatrix& rates) {
  const auto groups = state_components(rates);
  if (groups.size() > 1) {
    raise(ErrorKind::NonUniqueSteadyState,
          "steady state is not unique: disconnected state components " +
              describe_components(groups));
  }
  const auto n = static_cast<Eigen::Index>(rates.size());
  Eigen::MatrixXd system = rates.generator;
  system.row(n - 1).setOnes();
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  rhs(n - 1) = 1.0;
  Eigen::VectorXd p = Eigen::PartialPivLU<Eigen::MatrixXd>(system).solve(rhs);
  for (Eigen::Index i = 0; i < n; ++i) {
    require(std::isfinite(p(i)), ErrorKind::Solver, "steady-state solve produced non-finite populations");
    if (p(i) < 0.0) {
      require(p(i) >= -kNegativePopulationTol, ErrorKind::Solver,
              "steady-state population " + std::string(1, static_cast<char>('A' + i)) +
                  " negative beyond tolerance: " + std::to_string(p(i)));
      p(i) = 0.0;
    }
  }
  p /= p.sum();
  const double residual = (rates.generator * p).lpNorm<Eigen::Infinity>();
  require(residual <= kResidualTol, ErrorKind::Solver,
          "steady-state residual " + std::to_string(residual) + " exceeds 1e-12");
  return {p.data(), p.data() + n};
}

double net_transition_rate(const RateMatrix& rates, const std::vector<double>& populations,
                           std::size_t from, std::size_t to, std::string_view reservoir) {
  const RateChannel* forward = find_channel(rates, from, to, reservoir);
  const RateChannel* backward = find_channel(rates, to, from, reservoir);
  if (forward == nullptr || backward == nullptr) {
    raise(ErrorKind::Lookup, "no channel " + std::string(1, static_cast<char>('A' + from)) +
                                 "->" + std::string(1, static_cast<char>('A' + to)) +
                                 " via reservoir '" + std::string(reservoir) + "'");
  }
  return forward->rate * populations[from] - backward->rate * populations[to];
}

std::map<std::string, Currents> reservoir_currents(const RateMatrix& rates,
                                                   const std::vector<double>& populations,
                                                   const std::vector<ReservoirSpec>& reservoirs) {
  std::map<std::string, Currents> currents;
  for (const auto& lead : reservoirs) currents[lead.id] = Currents{};
  for (const auto& channel : rates.channels) {
    const auto& t = channel.transition;
    if (t.direction != Direction::Excitation) continue;
    const double net = net_transition_rate(rates, populations, t.from, t.to, t.reservoir);
    auto& entry = currents.at(t.reservoir);
    entry.particle += net;
    entry.energy += t.omega * net;
  }
  for (const auto& lead : reservoirs) {
    auto& entry = currents.at(lead.id);
    entry.heat = entry.energy - lead.mu * entry.particle;
  }
  return currents;
}

double cycle_flux(const RateMatrix& rates, const std::vector<double>& populations) {
  std::set<std::string> bottom_leads;
  std::set<std::string> upper_leads;
  for (const auto& channel : rates.channels) {
    if (channel.transition.dot == DotLabel::Bottom) bottom_leads.insert(channel.transition.reservoir);
    if (channel.transition.dot == DotLabel::Upper) upper_leads.insert(channel.transition.reservoir);
  }
  const bool cqd_three_terminal =
      rates.size() == 4 && bottom_leads.size() == 2 && upper_leads.size() == 1;
  require(cqd_three_terminal, ErrorKind::Topology,
          "cycle flux is defined for the three-terminal coupled-dot topology only");
  double flux = 0.0;
  for (const auto& lead : bottom_leads) flux += net_transition_rate(rates, populations, 0, 1, lead);
  return flux;
}

Solution solve_scenario(const Scenario& scenario) {
  Solution solution;
  solution.graph = build_transition_graph(scenario.system, scenario.reservoirs);
  solution.rates = build_rate_matrix(solution.graph, scenario.reservoirs);
  auto populations = solve_steady_state(solution.rates);

  SteadyReport report;
  report.populations = populations;
  report.currents = reservoir_currents(solution.rates, populations, scenario.reservoirs);
  if (scenario.is_cqd() && scenario.reservoirs.size() == 3) {
    report.cycle_flux = cycle_flux(solution.rates, populations);
  }
  Eigen::Map<const Eigen::VectorXd> p(populations.data(),
                                      static_cast<Eigen::Index>(populations.size()));
  report.residual = (solution.rates.generator * p).lpNorm<Eigen::Infinity>();
  report.sigma_dot = entropy_production_rate(report.currents, scenario.reservoirs);
  solution.report = std::move(report);
  return solution;
}

}  // namespace qdt
