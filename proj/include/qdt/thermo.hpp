#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qdt/scenario.hpp"
#include "qdt/types.hpp"

namespace qdt {

/// Entropy production rate -sum_lambda beta_lambda J_Q^lambda (k_B = 1).
double entropy_production_rate(const std::map<std::string, Currents>& currents,
                               const std::vector<ReservoirSpec>& reservoirs);

struct ForcePairValues {
  double energy = 0.0;
  double particle = 0.0;
};

/// Two-terminal forces referenced to the first lead:
/// F_E = beta_r - beta_l, F_N = beta_l mu_l - beta_r mu_r.
ForcePairValues forces_two_terminal(const ReservoirSpec& l, const ReservoirSpec& r);

/// Which energy flux is removed from the three-terminal entropy production
/// via conservation; the remaining two acquire the corresponding biases.
enum class Elimination { L, R, U };

/// Entropic biases conjugate to the retained fluxes. The particle pair is
/// always (J_N^l, beta_l mu_l - beta_r mu_r); the two energy pairs depend on
/// the elimination choice.
std::vector<ForcePair> forces_three_terminal(const std::vector<ReservoirSpec>& reservoirs,
                                             Elimination eliminate);

ForceFluxView make_two_terminal_view(const Scenario& scenario, const SteadyReport& report,
                                     bool l_based = true);

ForceFluxView make_three_terminal_view(const Scenario& scenario, const SteadyReport& report,
                                       Elimination eliminate);

/// Two-force view of a reduced scenario: the Sanchez-Buttiker pair
/// (J_E^u, beta - beta_u), (J_N^l, beta dmu) or the single-lead pair
/// (J_E^l, beta - beta_l), (J_N^l, beta_l mu_l - beta mu_r).
ForceFluxView make_reduced_view(const Scenario& scenario, const SteadyReport& report);

/// |sigma_dot - sum J*F| for the chosen representation.
double bilinear_check(const SteadyReport& report, const ForceFluxView& view);

/// Kinetic coefficients by central differences around an equilibrium
/// reference: lead l is re-solved so exactly one force is +/-h while the
/// other stays zero. Requires all reservoirs equal at the reference.
OnsagerMatrix onsager_matrix(const Scenario& equilibrium, double step);

/// Regime classification over a two-force representation.
///
/// Decision table (signs taken with |x| < tol treated as zero):
///   both forces zero                          -> Equilibrium
///   one force zero, cross current along it    -> SeebeckNormal / PeltierNormal
///   one force zero, cross current opposing    -> PseudoIcc when the pairs are
///       referenced to a single lead, otherwise the unconventional
///       Seebeck/Peltier label
///   both nonzero, same sign (single-lead rep) -> GenuineIcc when either
///       current opposes the forces, else ParallelDissipative
///   both nonzero, otherwise                   -> CrossEffectEngine when the
///       particle current opposes its force, CrossEffectRefrigerator when the
///       energy current does, else ParallelDissipative
RegimeLabel classify_regime(const ForceFluxView& view, double tol = 1e-10);

RegimeLabel classify_regime(double force_energy, double flux_energy, double force_particle,
                            double flux_particle, double tol, bool mutually_parallel);

struct ScanAxis {
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

struct ScanPoint {
  double force_energy = 0.0;
  double force_particle = 0.0;
  double kappa = 0.0;
  RegimeLabel label = RegimeLabel::Equilibrium;
  double flux_energy = 0.0;
  double flux_particle = 0.0;
  double sigma_dot = 0.0;
};

struct ScanSummary {
  std::vector<ScanPoint> points;
  std::map<RegimeLabel, int> counts;
  std::vector<std::size_t> genuine_icc;  // indices into points
  std::vector<std::size_t> pseudo_icc;
};

/// Evaluates steady state and regime over a force grid (and an optional
/// interaction grid for the coupled-dot family), reporting all points plus
/// label counts and inverse-current witnesses. Points run lexicographically
/// in (kappa, force_E, force_N); evaluation is parallel, output order fixed.
ScanSummary scan_icc(const Scenario& base, const ScanAxis& force_energy,
                     const ScanAxis& force_particle, const std::optional<ScanAxis>& kappa,
                     double tol = 1e-10);

}  // namespace qdt
