#pragma once

#include <map>
#include <string_view>
#include <vector>

#include "qdt/scenario.hpp"
#include "qdt/types.hpp"

namespace qdt {

/// Stationary populations of the generator: solves W p = 0 with the last row
/// replaced by normalization, partial pivoting. Throws NonUniqueSteadyState
/// when the state graph is disconnected and Solver when the residual or a
/// negative population exceeds tolerance.
std::vector<double> solve_steady_state(const RateMatrix& rates);

/// Net one-way flow along the directed channel from -> to for one lead:
/// rate(from->to) * p_from - rate(to->from) * p_to. Antisymmetric under
/// (from, to) exchange by construction.
double net_transition_rate(const RateMatrix& rates, const std::vector<double>& populations,
                           std::size_t from, std::size_t to, std::string_view reservoir);

/// Per-reservoir (J_E, J_N, J_Q), sign positive into the system.
std::map<std::string, Currents> reservoir_currents(const RateMatrix& rates,
                                                   const std::vector<double>& populations,
                                                   const std::vector<ReservoirSpec>& reservoirs);

/// Net rate around the cycle A->B->D->C->A of the three-terminal coupled-dot
/// topology, evaluated as the combined l+r net excitation on A->B. Throws
/// Topology on any other layout.
double cycle_flux(const RateMatrix& rates, const std::vector<double>& populations);

struct Solution {
  TransitionGraph graph;
  RateMatrix rates;
  SteadyReport report;
};

/// Builds the graph and generator for a scenario, solves the steady state and
/// assembles the full report (currents, cycle flux, entropy production).
Solution solve_scenario(const Scenario& scenario);

}  // namespace qdt
