#include "qdt/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "qdt/errors.hpp"
#include "qdt/scenario.hpp"

namespace qdt {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidParameter: return "invalid-parameter";
    case ErrorKind::Configuration: return "configuration";
    case ErrorKind::Topology: return "topology";
    case ErrorKind::Solver: return "solver";
    case ErrorKind::NonUniqueSteadyState: return "non-unique-steady-state";
    case ErrorKind::StepSize: return "step-size";
    case ErrorKind::Lookup: return "lookup";
    case ErrorKind::UnsupportedRepresentation: return "unsupported-representation";
    case ErrorKind::Precondition: return "precondition";
  }
  return "unknown";
}

std::string_view to_string(Spin spin) {
  switch (spin) {
    case Spin::Up: return "up";
    case Spin::Down: return "down";
    case Spin::Unpolarized: return "unpolarized";
  }
  return "unpolarized";
}

Spin spin_from_string(std::string_view text) {
  if (text == "up") return Spin::Up;
  if (text == "down") return Spin::Down;
  if (text == "unpolarized") return Spin::Unpolarized;
  raise(ErrorKind::Configuration,
        "unknown spin '" + std::string(text) + "' (expected up, down or unpolarized)");
}

bool spin_compatible(Spin a, Spin b) {
  return a == Spin::Unpolarized || b == Spin::Unpolarized || a == b;
}

ReservoirSpec::ReservoirSpec(std::string id_, double beta_, double mu_, double gamma_, Spin spin_)
    : id(std::move(id_)), beta(beta_), mu(mu_), gamma(gamma_), spin(spin_) {
  require(!id.empty(), ErrorKind::InvalidParameter, "reservoir id must be non-empty");
  require(std::isfinite(beta) && beta > 0.0, ErrorKind::InvalidParameter,
          "reservoir '" + id + "': beta > 0 violated");
  require(std::isfinite(mu), ErrorKind::InvalidParameter,
          "reservoir '" + id + "': mu must be finite");
  require(std::isfinite(gamma) && gamma >= 0.0, ErrorKind::InvalidParameter,
          "reservoir '" + id + "': gamma >= 0 violated");
}

std::string_view to_string(DotLabel label) {
  switch (label) {
    case DotLabel::Single: return "single";
    case DotLabel::Bottom: return "b";
    case DotLabel::Upper: return "u";
  }
  return "single";
}

DotSpec::DotSpec(DotLabel label_, double epsilon_, Spin spin_)
    : label(label_), epsilon(epsilon_), spin(spin_) {
  require(std::isfinite(epsilon), ErrorKind::InvalidParameter,
          "dot '" + std::string(to_string(label)) + "': epsilon must be finite");
}

SystemSpec::SystemSpec(std::vector<DotSpec> dots_, double kappa_c_, double kappa_s_,
                       std::vector<TunnelCoupling> couplings_)
    : dots(std::move(dots_)), kappa_c(kappa_c_), kappa_s(kappa_s_), couplings(std::move(couplings_)) {
  require(dots.size() == 1 || dots.size() == 2, ErrorKind::InvalidParameter,
          "system must hold one or two dots");
  require(std::isfinite(kappa_c) && kappa_c >= 0.0, ErrorKind::InvalidParameter,
          "kappa_c >= 0 violated");
  require(std::isfinite(kappa_s) && kappa_s >= 0.0, ErrorKind::InvalidParameter,
          "kappa_s >= 0 violated");
  if (dots.size() == 1) {
    require(dots[0].label == DotLabel::Single, ErrorKind::InvalidParameter,
            "a one-dot system uses the 'single' label");
    require(kappa_c == 0.0 && kappa_s == 0.0, ErrorKind::InvalidParameter,
            "single-dot systems have kappa_c = kappa_s = 0");
  } else {
    const bool labelled = (dots[0].label == DotLabel::Bottom && dots[1].label == DotLabel::Upper);
    require(labelled, ErrorKind::InvalidParameter,
            "a two-dot system lists the bottom dot 'b' then the upper dot 'u'");
  }
  for (const auto& coupling : couplings) {
    const bool known = std::any_of(dots.begin(), dots.end(),
                                   [&](const DotSpec& d) { return d.label == coupling.dot; });
    require(known, ErrorKind::Configuration,
            "coupling references unknown dot '" + std::string(to_string(coupling.dot)) + "'");
  }
}

const DotSpec& SystemSpec::dot(DotLabel label) const {
  for (const auto& d : dots)
    if (d.label == label) return d;
  raise(ErrorKind::Lookup, "no dot labelled '" + std::string(to_string(label)) + "'");
}

std::size_t SystemSpec::dot_position(DotLabel label) const {
  for (std::size_t i = 0; i < dots.size(); ++i)
    if (dots[i].label == label) return i;
  raise(ErrorKind::Lookup, "no dot labelled '" + std::string(to_string(label)) + "'");
}

int EigenState::total_occupation() const {
  return std::accumulate(occupations.begin(), occupations.end(), 0);
}

std::string_view to_string(FluxKind kind) {
  return kind == FluxKind::Energy ? "energy" : "particle";
}

double ForceFluxView::sigma_check() const {
  double sum = 0.0;
  for (const auto& pair : pairs) sum += pair.flux * pair.force;
  return sum;
}

double OnsagerMatrix::reciprocity_residual() const {
  return std::abs(energy_particle - particle_energy);
}

bool OnsagerMatrix::direct_coefficients_positive() const {
  return energy_energy > 0.0 && particle_particle > 0.0;
}

std::string_view to_string(RegimeLabel label) {
  switch (label) {
    case RegimeLabel::Equilibrium: return "Equilibrium";
    case RegimeLabel::SeebeckNormal: return "SeebeckNormal";
    case RegimeLabel::SeebeckUnconventional: return "SeebeckUnconventional";
    case RegimeLabel::PeltierNormal: return "PeltierNormal";
    case RegimeLabel::PeltierUnconventional: return "PeltierUnconventional";
    case RegimeLabel::CrossEffectEngine: return "CrossEffectEngine";
    case RegimeLabel::CrossEffectRefrigerator: return "CrossEffectRefrigerator";
    case RegimeLabel::ParallelDissipative: return "ParallelDissipative";
    case RegimeLabel::PseudoIcc: return "PseudoICC";
    case RegimeLabel::GenuineIcc: return "GenuineICC";
  }
  return "Equilibrium";
}

std::string_view to_string(Reduction reduction) {
  switch (reduction) {
    case Reduction::None: return "none";
    case Reduction::SB: return "sb";
    case Reduction::ICC: return "icc";
  }
  return "none";
}

const ReservoirSpec& Scenario::lead(std::size_t role) const {
  require(role < reservoirs.size(), ErrorKind::Lookup, "lead role out of range");
  return reservoirs[role];
}

const ReservoirSpec& Scenario::lead(std::string_view id) const {
  for (const auto& r : reservoirs)
    if (r.id == id) return r;
  raise(ErrorKind::Lookup, "no reservoir with id '" + std::string(id) + "'");
}

void validate_scenario(const Scenario& scenario) {
  std::set<std::string> ids;
  for (const auto& r : scenario.reservoirs) {
    require(ids.insert(r.id).second, ErrorKind::Configuration,
            "reservoir id '" + r.id + "' is not unique within the scenario");
  }
  for (const auto& coupling : scenario.system.couplings) {
    require(ids.count(coupling.reservoir_id) == 1, ErrorKind::Configuration,
            "coupling references unknown reservoir '" + coupling.reservoir_id + "'");
    const DotSpec& dot = scenario.system.dot(coupling.dot);
    const ReservoirSpec& lead = scenario.lead(coupling.reservoir_id);
    require(spin_compatible(dot.spin, lead.spin), ErrorKind::Configuration,
            "spin mismatch: dot '" + std::string(to_string(dot.label)) + "' (" +
                std::string(to_string(dot.spin)) + ") cannot couple to reservoir '" + lead.id +
                "' (" + std::string(to_string(lead.spin)) + ")");
  }
  for (const auto& dot : scenario.system.dots) {
    const bool coupled =
        std::any_of(scenario.system.couplings.begin(), scenario.system.couplings.end(),
                    [&](const TunnelCoupling& c) { return c.dot == dot.label; });
    require(coupled, ErrorKind::Configuration,
            "dot '" + std::string(to_string(dot.label)) + "' has no coupled reservoir");
  }
  if (scenario.reduction == Reduction::SB || scenario.reduction == Reduction::ICC) {
    require(scenario.is_cqd(), ErrorKind::Topology,
            "reductions apply to the coupled-dot topology only");
  }
}

}  // namespace qdt
