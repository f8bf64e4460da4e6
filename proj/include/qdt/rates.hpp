#pragma once

#include <vector>

#include "qdt/types.hpp"

namespace qdt {

/// Fermi-Dirac occupation 1 / (1 + exp(beta * (omega - mu))), evaluated
/// overflow-safely (exact 0 or 1 once the exponent leaves the double range).
double fermi_plus(double beta, double mu, double omega);

/// Complement 1 - fermi_plus; the emission factor of the reverse process.
double fermi_minus(double beta, double mu, double omega);

/// Eigenstates of the diagonal system Hamiltonian, in label order A, B[, C, D].
std::vector<EigenState> build_eigenbasis(const SystemSpec& system);

/// Directed reservoir-mediated transitions allowed by sequential tunnelling.
/// Only one dot's occupation changes per transition, so the two-particle
/// channels (00 <-> 11 and 10 <-> 01) never appear.
TransitionGraph build_transition_graph(const SystemSpec& system,
                                       const std::vector<ReservoirSpec>& reservoirs);

/// Population-sector generator. Excitation i->j via lead lambda enters at
/// gamma * f+(omega_ij), the matching de-excitation at gamma * f-(omega_ij);
/// diagonals close each column to zero.
RateMatrix build_rate_matrix(const TransitionGraph& graph,
                             const std::vector<ReservoirSpec>& reservoirs);

}  // namespace qdt
