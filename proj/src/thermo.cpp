#include "qdt/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdt/errors.hpp"
#include "qdt/models.hpp"
#include "qdt/parallel.hpp"
#include "qdt/steady.hpp"

namespace qdt {

namespace {

int tol_sign(double value, double tol) {
  if (value > tol) return 1;
  if (value < -tol) return -1;
  return 0;
}

double axis_value(const ScanAxis& axis, int i) {
  if (axis.count == 1) return axis.start;
  return axis.start + (axis.stop - axis.start) * static_cast<double>(i) /
                          static_cast<double>(axis.count - 1);
}

void validate_axis(const ScanAxis& axis, const std::string& name) {
  require(axis.count >= 1, ErrorKind::Configuration, name + ": count must be >= 1");
  require(std::isfinite(axis.start) && std::isfinite(axis.stop), ErrorKind::Configuration,
          name + ": bounds must be finite");
  require(!(axis.start == axis.stop && axis.count > 1), ErrorKind::Configuration,
          name + ": degenerate axis (start = stop with count > 1)");
}

double lead_flux(const SteadyReport& report, const std::string& id, FluxKind kind) {
  const auto it = report.currents.find(id);
  require(it != report.currents.end(), ErrorKind::Lookup,
          "report has no currents for reservoir '" + id + "'");
  return kind == FluxKind::Energy ? it->second.energy : it->second.particle;
}

/// Rebuilds lead l of `base` so the l-referenced force pair takes the target
/// values, the other leads acting as the fixed reference.
Scenario apply_l_forces(const Scenario& base, double force_energy, double force_particle) {
  const ReservoirSpec& reference = base.lead(1);
  const double beta_l = reference.beta - force_energy;
  require(beta_l > 0.0, ErrorKind::Configuration,
          "force_E = " + std::to_string(force_energy) +
              " requires beta_l = beta_ref - force_E > 0 (beta_ref = " +
              std::to_string(reference.beta) + ")");
  const double mu_l = (force_particle + reference.beta * reference.mu) / beta_l;
  Scenario out = base;
  const ReservoirSpec& l = base.lead(0);
  out.reservoirs[0] = ReservoirSpec(l.id, beta_l, mu_l, l.gamma, l.spin);
  return out;
}

}  // namespace

double entropy_production_rate(const std::map<std::string, Currents>& currents,
                               const std::vector<ReservoirSpec>& reservoirs) {
  double sigma = 0.0;
  for (const auto& lead : reservoirs) {
    const auto it = currents.find(lead.id);
    require(it != currents.end(), ErrorKind::Lookup,
            "currents missing for reservoir '" + lead.id + "'");
    sigma -= kBoltzmann * lead.beta * it->second.heat;
  }
  return sigma;
}

ForcePairValues forces_two_terminal(const ReservoirSpec& l, const ReservoirSpec& r) {
  return {kBoltzmann * (r.beta - l.beta), kBoltzmann * (l.beta * l.mu - r.beta * r.mu)};
}

std::vector<ForcePair> forces_three_terminal(const std::vector<ReservoirSpec>& reservoirs,
                                             Elimination eliminate) {
  require(reservoirs.size() == 3, ErrorKind::Configuration,
          "three-terminal forces require exactly three reservoirs");
  const ReservoirSpec& l = reservoirs[0];
  const ReservoirSpec& r = reservoirs[1];
  const ReservoirSpec& u = reservoirs[2];
  const double particle = kBoltzmann * (l.beta * l.mu - r.beta * r.mu);
  std::vector<ForcePair> pairs;
  switch (eliminate) {
    case Elimination::L:
      pairs.push_back({r.id, FluxKind::Energy, kBoltzmann * (l.beta - r.beta), 0.0});
      pairs.push_back({u.id, FluxKind::Energy, kBoltzmann * (l.beta - u.beta), 0.0});
      break;
    case Elimination::R:
      pairs.push_back({l.id, FluxKind::Energy, kBoltzmann * (r.beta - l.beta), 0.0});
      pairs.push_back({u.id, FluxKind::Energy, kBoltzmann * (r.beta - u.beta), 0.0});
      break;
    case Elimination::U:
      pairs.push_back({l.id, FluxKind::Energy, kBoltzmann * (u.beta - l.beta), 0.0});
      pairs.push_back({r.id, FluxKind::Energy, kBoltzmann * (u.beta - r.beta), 0.0});
      break;
  }
  pairs.push_back({l.id, FluxKind::Particle, particle, 0.0});
  return pairs;
}

ForceFluxView make_two_terminal_view(const Scenario& scenario, const SteadyReport& report,
                                     bool l_based) {
  require(scenario.reservoirs.size() == 2, ErrorKind::Topology,
          "two-terminal view requires exactly two reservoirs");
  const ReservoirSpec& l = scenario.lead(0);
  const ReservoirSpec& r = scenario.lead(1);
  const ForcePairValues forces = forces_two_terminal(l, r);
  ForceFluxView view;
  view.mutually_parallel = true;
  const ReservoirSpec& basis = l_based ? l : r;
  const double sign = l_based ? 1.0 : -1.0;
  view.representation = "two_terminal_" + basis.id;
  view.pairs = {
      {basis.id, FluxKind::Energy, sign * forces.energy,
       lead_flux(report, basis.id, FluxKind::Energy)},
      {basis.id, FluxKind::Particle, sign * forces.particle,
       lead_flux(report, basis.id, FluxKind::Particle)},
  };
  return view;
}

ForceFluxView make_three_terminal_view(const Scenario& scenario, const SteadyReport& report,
                                       Elimination eliminate) {
  require(scenario.reservoirs.size() == 3, ErrorKind::Topology,
          "three-terminal view requires exactly three reservoirs");
  ForceFluxView view;
  view.mutually_parallel = false;
  switch (eliminate) {
    case Elimination::L: view.representation = "eliminate_l"; break;
    case Elimination::R: view.representation = "eliminate_r"; break;
    case Elimination::U: view.representation = "eliminate_u"; break;
  }
  view.pairs = forces_three_terminal(scenario.reservoirs, eliminate);
  for (auto& pair : view.pairs) pair.flux = lead_flux(report, pair.reservoir, pair.kind);
  return view;
}

ForceFluxView make_reduced_view(const Scenario& scenario, const SteadyReport& report) {
  require(scenario.is_cqd() && scenario.reservoirs.size() == 3, ErrorKind::Topology,
          "reduced views apply to the three-terminal coupled-dot topology");
  const ReservoirSpec& l = scenario.lead(0);
  const ReservoirSpec& r = scenario.lead(1);
  const ReservoirSpec& u = scenario.lead(2);
  ForceFluxView view;
  if (scenario.reduction == Reduction::SB) {
    // beta_l = beta_r = beta: the eliminate-r biases collapse to
    // (J_E^u, beta - beta_u) and (J_N^l, beta dmu).
    view.representation = "reduced_sb";
    view.mutually_parallel = false;
    view.pairs = {
        {u.id, FluxKind::Energy, kBoltzmann * (r.beta - u.beta),
         lead_flux(report, u.id, FluxKind::Energy)},
        {l.id, FluxKind::Particle, kBoltzmann * (l.beta * l.mu - r.beta * r.mu),
         lead_flux(report, l.id, FluxKind::Particle)},
    };
    return view;
  }
  if (scenario.reduction == Reduction::ICC) {
    // beta_r = beta_u = beta: both remaining forces reference lead l.
    view.representation = "reduced_icc";
    view.mutually_parallel = true;
    view.pairs = {
        {l.id, FluxKind::Energy, kBoltzmann * (r.beta - l.beta),
         lead_flux(report, l.id, FluxKind::Energy)},
        {l.id, FluxKind::Particle, kBoltzmann * (l.beta * l.mu - r.beta * r.mu),
         lead_flux(report, l.id, FluxKind::Particle)},
    };
    return view;
  }
  raise(ErrorKind::Configuration,
        "scenario carries no reduction; build one with sb_reduction or icc_reduction");
}

double bilinear_check(const SteadyReport& report, const ForceFluxView& view) {
  return std::abs(report.sigma_dot - view.sigma_check());
}

OnsagerMatrix onsager_matrix(const Scenario& equilibrium, double step) {
  require(std::isfinite(step) && step > 0.0, ErrorKind::InvalidParameter,
          "onsager step must be > 0");
  const ReservoirSpec& reference = equilibrium.lead(0);
  for (const auto& lead : equilibrium.reservoirs) {
    const bool equal = std::abs(lead.beta - reference.beta) <=
                           1e-12 * std::max(1.0, std::abs(reference.beta)) &&
                       std::abs(lead.mu - reference.mu) <=
                           1e-12 * std::max(1.0, std::abs(reference.mu));
    require(equal, ErrorKind::Precondition,
            "onsager extraction requires an equilibrium reference (all reservoirs equal); "
            "reservoir '" + lead.id + "' differs");
  }

  const auto evaluate = [&](double force_energy, double force_particle) {
    const Scenario perturbed = apply_l_forces(equilibrium, force_energy, force_particle);
    const Solution solution = solve_scenario(perturbed);
    const std::string& id = perturbed.lead(0).id;
    return std::pair<double, double>{lead_flux(solution.report, id, FluxKind::Energy),
                                     lead_flux(solution.report, id, FluxKind::Particle)};
  };

  const auto [je_ep, jn_ep] = evaluate(step, 0.0);
  const auto [je_em, jn_em] = evaluate(-step, 0.0);
  const auto [je_np, jn_np] = evaluate(0.0, step);
  const auto [je_nm, jn_nm] = evaluate(0.0, -step);

  const auto check_resolved = [&](double plus, double minus, const char* name) {
    const double scale = std::max(std::abs(plus), std::abs(minus));
    require(std::abs(plus - minus) > 1e3 * std::numeric_limits<double>::epsilon() * scale,
            ErrorKind::StepSize,
            std::string("onsager step too small: the ") + name +
                " difference is below 1e3 ulp of the current magnitude");
  };
  check_resolved(je_ep, je_em, "J_E(force_E)");
  check_resolved(jn_np, jn_nm, "J_N(force_N)");

  OnsagerMatrix matrix;
  matrix.energy_energy = (je_ep - je_em) / (2.0 * step);
  matrix.particle_energy = (jn_ep - jn_em) / (2.0 * step);
  matrix.energy_particle = (je_np - je_nm) / (2.0 * step);
  matrix.particle_particle = (jn_np - jn_nm) / (2.0 * step);
  matrix.reference_beta = reference.beta;
  matrix.reference_mu = reference.mu;
  matrix.step = step;
  return matrix;
}

RegimeLabel classify_regime(double force_energy, double flux_energy, double force_particle,
                            double flux_particle, double tol, bool mutually_parallel) {
  require(std::isfinite(tol) && tol >= 0.0, ErrorKind::InvalidParameter,
          "classification tolerance must be >= 0");
  const int fe = tol_sign(force_energy, tol);
  const int fn = tol_sign(force_particle, tol);
  const int je = tol_sign(flux_energy, tol);
  const int jn = tol_sign(flux_particle, tol);

  if (fe == 0 && fn == 0) return RegimeLabel::Equilibrium;

  if (fn == 0) {  // energy axis: the cross response is the particle current
    if (jn * fe < 0)
      return mutually_parallel ? RegimeLabel::PseudoIcc : RegimeLabel::SeebeckUnconventional;
    return RegimeLabel::SeebeckNormal;
  }
  if (fe == 0) {  // particle axis: the cross response is the energy current
    if (je * fn < 0)
      return mutually_parallel ? RegimeLabel::PseudoIcc : RegimeLabel::PeltierUnconventional;
    return RegimeLabel::PeltierNormal;
  }

  if (mutually_parallel && fe == fn) {
    // Parallel forces: a current opposing its conjugate force opposes both.
    if (je * fe < 0 || jn * fn < 0) return RegimeLabel::GenuineIcc;
    return RegimeLabel::ParallelDissipative;
  }
  if (jn * fn < 0) return RegimeLabel::CrossEffectEngine;
  if (je * fe < 0) return RegimeLabel::CrossEffectRefrigerator;
  return RegimeLabel::ParallelDissipative;
}

RegimeLabel classify_regime(const ForceFluxView& view, double tol) {
  require(view.pairs.size() == 2, ErrorKind::UnsupportedRepresentation,
          "classification is defined for two-force representations only; reduce the "
          "three-terminal model first");
  const ForcePair* energy = nullptr;
  const ForcePair* particle = nullptr;
  for (const auto& pair : view.pairs) {
    if (pair.kind == FluxKind::Energy) energy = &pair;
    if (pair.kind == FluxKind::Particle) particle = &pair;
  }
  require(energy != nullptr && particle != nullptr, ErrorKind::UnsupportedRepresentation,
          "classification needs one energy and one particle pair");
  return classify_regime(energy->force, energy->flux, particle->force, particle->flux, tol,
                         view.mutually_parallel);
}

ScanSummary scan_icc(const Scenario& base, const ScanAxis& force_energy,
                     const ScanAxis& force_particle, const std::optional<ScanAxis>& kappa,
                     double tol) {
  validate_axis(force_energy, "force_E axis");
  validate_axis(force_particle, "force_N axis");
  const bool cqd = base.is_cqd();
  if (cqd) {
    require(base.reduction == Reduction::ICC, ErrorKind::Precondition,
            "the coupled-dot scan requires the single-lead reduction (beta_r = beta_u)");
  } else {
    require(base.reservoirs.size() == 2, ErrorKind::Topology,
            "scan expects a two-terminal or reduced coupled-dot scenario");
    require(!kappa.has_value(), ErrorKind::Configuration,
            "a kappa axis applies to the coupled-dot family only");
  }
  if (kappa) validate_axis(*kappa, "kappa axis");

  // Reject unreachable force targets before spawning workers.
  const double beta_ref = base.lead(1).beta;
  for (int i = 0; i < force_energy.count; ++i) {
    require(axis_value(force_energy, i) < beta_ref, ErrorKind::Configuration,
            "force_E grid reaches beta_ref; the inverted beta_l would be non-positive");
  }

  const int nk = kappa ? kappa->count : 1;
  const int ne = force_energy.count;
  const int np = force_particle.count;
  const std::size_t total = static_cast<std::size_t>(nk) * ne * np;

  ScanSummary summary;
  summary.points.resize(total);
  parallel_for(total, [&](std::size_t index) {
    const int ik = static_cast<int>(index / (static_cast<std::size_t>(ne) * np));
    const int rem = static_cast<int>(index % (static_cast<std::size_t>(ne) * np));
    const int ie = rem / np;
    const int ip = rem % np;

    ScanPoint point;
    point.kappa = kappa ? axis_value(*kappa, ik) : (cqd ? base.system.kappa() : 0.0);
    point.force_energy = axis_value(force_energy, ie);
    point.force_particle = axis_value(force_particle, ip);

    Scenario scenario = kappa ? with_kappa(base, point.kappa) : base;
    scenario = apply_l_forces(scenario, point.force_energy, point.force_particle);
    const Solution solution = solve_scenario(scenario);
    const ForceFluxView view = cqd ? make_reduced_view(scenario, solution.report)
                                   : make_two_terminal_view(scenario, solution.report);
    point.label = classify_regime(view, tol);
    point.flux_energy = lead_flux(solution.report, scenario.lead(0).id, FluxKind::Energy);
    point.flux_particle = lead_flux(solution.report, scenario.lead(0).id, FluxKind::Particle);
    point.sigma_dot = solution.report.sigma_dot;
    summary.points[index] = point;
  });

  for (std::size_t i = 0; i < summary.points.size(); ++i) {
    const auto label = summary.points[i].label;
    ++summary.counts[label];
    if (label == RegimeLabel::GenuineIcc) summary.genuine_icc.push_back(i);
    if (label == RegimeLabel::PseudoIcc) summary.pseudo_icc.push_back(i);
  }
  return summary;
}

}  // namespace qdt
