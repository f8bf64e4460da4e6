#pragma once

#include <Eigen/Dense>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qdt {

// Units: hbar = k_B = 1. Energies, temperatures and chemical potentials share
// one energy unit; rates are in units of that energy.
inline constexpr double kBoltzmann = 1.0;

enum class Spin { Up, Down, Unpolarized };

std::string_view to_string(Spin spin);
Spin spin_from_string(std::string_view text);

/// A dot may tunnel-couple to a reservoir only if spins match or either side
/// is unpolarized.
bool spin_compatible(Spin a, Spin b);

/// A fermionic lead in the wide-band limit.
struct ReservoirSpec {
  std::string id;
  double beta;   // inverse temperature, > 0
  double mu;     // chemical potential
  double gamma;  // bare tunnelling rate, >= 0
  Spin spin;

  ReservoirSpec(std::string id, double beta, double mu, double gamma,
                Spin spin = Spin::Unpolarized);
};

enum class DotLabel { Single, Bottom, Upper };

std::string_view to_string(DotLabel label);

struct DotSpec {
  DotLabel label;
  double epsilon;  // single-particle level
  Spin spin;

  DotSpec(DotLabel label, double epsilon, Spin spin = Spin::Unpolarized);
};

struct TunnelCoupling {
  DotLabel dot;
  std::string reservoir_id;
};

/// One or two dots with capacitive (kappa_c) and spin-spin (kappa_s)
/// interdot interactions; the effective interaction kappa = kappa_c - kappa_s
/// may take either sign.
struct SystemSpec {
  std::vector<DotSpec> dots;
  double kappa_c;
  double kappa_s;
  std::vector<TunnelCoupling> couplings;

  SystemSpec(std::vector<DotSpec> dots, double kappa_c, double kappa_s,
             std::vector<TunnelCoupling> couplings);

  double kappa() const { return kappa_c - kappa_s; }
  const DotSpec& dot(DotLabel label) const;
  std::size_t dot_position(DotLabel label) const;
};

/// Number eigenstate of the diagonal system Hamiltonian. Occupations are
/// ordered (bottom, upper) for the coupled system.
struct EigenState {
  char label;  // 'A'..'D'
  std::vector<int> occupations;
  double energy;

  int total_occupation() const;
};

enum class Direction { Excitation, Deexcitation };

/// A reservoir-mediated single-particle transition between eigenstates.
/// omega is E(to) - E(from); de-excitations carry the negated energy.
struct Transition {
  std::size_t from;
  std::size_t to;
  double omega;
  std::string reservoir;
  DotLabel dot;
  Direction direction;
};

struct TransitionGraph {
  std::vector<EigenState> basis;
  std::vector<Transition> transitions;
};

struct RateChannel {
  Transition transition;
  double rate;  // one-way rate gamma * f^(+/-)
};

/// Population-sector generator: W(j,i) is the total rate i -> j, each column
/// sums to zero.
struct RateMatrix {
  Eigen::MatrixXd generator;
  std::vector<RateChannel> channels;

  std::size_t size() const { return static_cast<std::size_t>(generator.rows()); }
};

struct Currents {
  double energy = 0.0;    // J_E, positive into the system
  double particle = 0.0;  // J_N
  double heat = 0.0;      // J_Q = J_E - mu * J_N
};

struct SteadyReport {
  std::vector<double> populations;
  std::map<std::string, Currents> currents;  // keyed by reservoir id
  std::optional<double> cycle_flux;          // coupled-dot topology only
  double sigma_dot = 0.0;                    // entropy production rate
  double residual = 0.0;                     // ||W p||_inf
};

enum class FluxKind { Energy, Particle };

std::string_view to_string(FluxKind kind);

struct ForcePair {
  std::string reservoir;
  FluxKind kind;
  double force = 0.0;
  double flux = 0.0;
};

/// One representation of the entropy production as conjugate force-flux
/// pairs. mutually_parallel marks representations whose forces are referenced
/// to a single lead (the two-terminal and attractive-coupling reductions);
/// cross-referenced representations (Sanchez-Buttiker) are not.
struct ForceFluxView {
  std::string representation;
  bool mutually_parallel = false;
  std::vector<ForcePair> pairs;

  double sigma_check() const;
};

struct OnsagerMatrix {
  double energy_energy = 0.0;      // L_EE
  double energy_particle = 0.0;    // L_EN
  double particle_energy = 0.0;    // L_NE
  double particle_particle = 0.0;  // L_NN
  double reference_beta = 0.0;
  double reference_mu = 0.0;
  double step = 0.0;

  double reciprocity_residual() const;
  bool direct_coefficients_positive() const;
};

enum class RegimeLabel {
  Equilibrium,
  SeebeckNormal,
  SeebeckUnconventional,
  PeltierNormal,
  PeltierUnconventional,
  CrossEffectEngine,
  CrossEffectRefrigerator,
  ParallelDissipative,
  PseudoIcc,
  GenuineIcc,
};

std::string_view to_string(RegimeLabel label);

}  // namespace qdt
