#include "qdt/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>
#include <sstream>

#include "qdt/errors.hpp"
#include "qdt/models.hpp"
#include "qdt/parallel.hpp"
#include "qdt/steady.hpp"
#include "qdt/version.hpp"

namespace qdt {

namespace {

using nlohmann::json;

[[noreturn]] void config_error(const std::string& path, const std::string& message) {
  raise(ErrorKind::Configuration, "config error at " + path + ": " + message);
}

void check_keys(const json& node, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& item : node.items()) {
    if (allowed.count(item.key()) == 0) config_error(path + "." + item.key(), "unknown key");
  }
}

const json& get_required(const json& node, const std::string& path, const char* key) {
  const auto it = node.find(key);
  if (it == node.end()) config_error(path + "." + key, "required key is missing");
  return *it;
}

double as_number(const json& node, const std::string& path) {
  if (!node.is_number()) config_error(path, "expected a number");
  return node.get<double>();
}

std::string as_string(const json& node, const std::string& path) {
  if (!node.is_string()) config_error(path, "expected a string");
  return node.get<std::string>();
}

double dot_epsilon(const json& dots, const std::string& path, const char* key) {
  const json& dot = get_required(dots, path, key);
  const std::string dot_path = path + "." + key;
  if (!dot.is_object()) config_error(dot_path, "expected an object");
  check_keys(dot, dot_path, {"epsilon"});
  return as_number(get_required(dot, dot_path, "epsilon"), dot_path + ".epsilon");
}

std::vector<ReservoirSpec> parse_reservoirs(const json& node) {
  if (!node.is_array()) config_error("$.reservoirs", "expected an array");
  std::vector<ReservoirSpec> leads;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string path = "$.reservoirs[" + std::to_string(i) + "]";
    const json& entry = node[i];
    if (!entry.is_object()) config_error(path, "expected an object");
    check_keys(entry, path, {"id", "beta", "mu", "gamma", "spin"});
    const std::string id = as_string(get_required(entry, path, "id"), path + ".id");
    const double beta = as_number(get_required(entry, path, "beta"), path + ".beta");
    const double mu = as_number(get_required(entry, path, "mu"), path + ".mu");
    const double gamma = as_number(get_required(entry, path, "gamma"), path + ".gamma");
    Spin spin = Spin::Unpolarized;
    if (entry.contains("spin")) {
      try {
        spin = spin_from_string(as_string(entry["spin"], path + ".spin"));
      } catch (const Error& error) {
        config_error(path + ".spin", error.what());
      }
    }
    try {
      leads.emplace_back(id, beta, mu, gamma, spin);
    } catch (const Error& error) {
      config_error(path, error.what());
    }
  }
  return leads;
}

ReservoirSpec take_lead(const std::vector<ReservoirSpec>& leads, const std::string& id) {
  for (const auto& lead : leads)
    if (lead.id == id) return lead;
  config_error("$.reservoirs", "missing reservoir with id '" + id + "'");
}

std::string format17(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

json view_to_json(const SteadyReport& report, const ForceFluxView& view) {
  json pairs = json::array();
  for (const auto& pair : view.pairs) {
    pairs.push_back({{"reservoir", pair.reservoir},
                     {"kind", std::string(to_string(pair.kind))},
                     {"force", pair.force},
                     {"flux", pair.flux}});
  }
  return {{"mutually_parallel", view.mutually_parallel},
          {"pairs", pairs},
          {"bilinear_residual", bilinear_check(report, view)}};
}

json meta_block() {
  return {{"format", kReportFormat}, {"tool", "qdsim"}, {"version", kVersion}};
}

json axis_to_json(const ScanAxis& axis) {
  return {{"start", axis.start}, {"stop", axis.stop}, {"count", axis.count}};
}

// ---- sweep machinery -------------------------------------------------------

const std::set<std::string> kForceParams = {"force_E", "force_N"};

void reapply_reduction(Scenario& scenario) {
  if (scenario.reduction == Reduction::SB) {
    const ReservoirSpec& l = scenario.reservoirs[0];
    ReservoirSpec& r = scenario.reservoirs[1];
    r = ReservoirSpec(r.id, l.beta, r.mu, r.gamma, r.spin);
  } else if (scenario.reduction == Reduction::ICC) {
    const ReservoirSpec& r = scenario.reservoirs[1];
    ReservoirSpec& u = scenario.reservoirs[2];
    u = ReservoirSpec(u.id, r.beta, u.mu, u.gamma, u.spin);
  }
}

Scenario rebuild_cqd(const Scenario& base, double eps_b, double eps_u, double kappa_c,
                     double kappa_s) {
  Scenario out = cqd_three_terminal(eps_b, eps_u, kappa_c, kappa_s, base.reservoirs[0],
                                    base.reservoirs[1], base.reservoirs[2]);
  out.reduction = base.reduction;
  return out;
}

Scenario set_lead_field(Scenario scenario, const std::string& id, const std::string& field,
                        double value) {
  for (auto& lead : scenario.reservoirs) {
    if (lead.id != id) continue;
    const double beta = field == "beta" ? value : lead.beta;
    const double mu = field == "mu" ? value : lead.mu;
    const double gamma = field == "gamma" ? value : lead.gamma;
    lead = ReservoirSpec(lead.id, beta, mu, gamma, lead.spin);
    reapply_reduction(scenario);
    return scenario;
  }
  raise(ErrorKind::Configuration, "unknown sweep parameter lead '" + id + "'");
}

Scenario apply_direct_param(Scenario scenario, const std::string& param, double value) {
  const bool cqd = scenario.is_cqd();
  if (param == "kappa") {
    require(cqd, ErrorKind::Configuration, "kappa applies to the coupled-dot model only");
    return with_kappa(scenario, value);
  }
  if (param == "kappa_c" || param == "kappa_s") {
    require(cqd, ErrorKind::Configuration, param + " applies to the coupled-dot model only");
    const double kc = param == "kappa_c" ? value : scenario.system.kappa_c;
    const double ks = param == "kappa_s" ? value : scenario.system.kappa_s;
    return rebuild_cqd(scenario, scenario.system.dot(DotLabel::Bottom).epsilon,
                       scenario.system.dot(DotLabel::Upper).epsilon, kc, ks);
  }
  if (param == "epsilon") {
    require(!cqd, ErrorKind::Configuration, "epsilon names the single-dot level; use epsilon_b "
                                            "or epsilon_u for the coupled model");
    Scenario out = single_qd_two_terminal(value, scenario.reservoirs[0], scenario.reservoirs[1]);
    return out;
  }
  if (param == "epsilon_b" || param == "epsilon_u") {
    require(cqd, ErrorKind::Configuration, param + " applies to the coupled-dot model only");
    const double eb = param == "epsilon_b" ? value : scenario.system.dot(DotLabel::Bottom).epsilon;
    const double eu = param == "epsilon_u" ? value : scenario.system.dot(DotLabel::Upper).epsilon;
    return rebuild_cqd(scenario, eb, eu, scenario.system.kappa_c, scenario.system.kappa_s);
  }
  const auto dot_pos = param.find('.');
  if (dot_pos != std::string::npos) {
    const std::string id = param.substr(0, dot_pos);
    const std::string field = param.substr(dot_pos + 1);
    require(field == "beta" || field == "mu" || field == "gamma", ErrorKind::Configuration,
            "unknown lead field '" + field + "' (expected beta, mu or gamma)");
    if (scenario.reduction == Reduction::SB && id == scenario.reservoirs[1].id && field == "beta")
      raise(ErrorKind::Configuration,
            "sweeping " + param + " conflicts with the sb reduction (beta_r is pinned to beta_l)");
    if (scenario.reduction == Reduction::ICC && scenario.reservoirs.size() == 3 &&
        id == scenario.reservoirs[2].id && field == "beta")
      raise(ErrorKind::Configuration,
            "sweeping " + param + " conflicts with the icc reduction (beta_u is pinned to beta_r)");
    return set_lead_field(std::move(scenario), id, field, value);
  }
  raise(ErrorKind::Configuration,
        "unknown sweep parameter '" + param +
            "' (expected kappa, kappa_c, kappa_s, epsilon, epsilon_b, epsilon_u, force_E, "
            "force_N, or <lead>.beta|mu|gamma)");
}

/// Current two-force values implied by the reservoir parameters alone.
ForcePairValues scenario_forces(const Scenario& scenario) {
  if (!scenario.is_cqd()) {
    return forces_two_terminal(scenario.lead(0), scenario.lead(1));
  }
  const ReservoirSpec& l = scenario.lead(0);
  const ReservoirSpec& r = scenario.lead(1);
  const ReservoirSpec& u = scenario.lead(2);
  if (scenario.reduction == Reduction::SB) {
    return {kBoltzmann * (r.beta - u.beta), kBoltzmann * (l.beta * l.mu - r.beta * r.mu)};
  }
  if (scenario.reduction == Reduction::ICC) {
    return {kBoltzmann * (r.beta - l.beta), kBoltzmann * (l.beta * l.mu - r.beta * r.mu)};
  }
  raise(ErrorKind::Configuration,
        "force sweeps require a two-force scenario (single dot or a reduced coupled pair)");
}

Scenario apply_forces(Scenario scenario, double force_energy, double force_particle) {
  if (scenario.is_cqd() && scenario.reduction == Reduction::SB) {
    // Energy force lives on the upper lead, particle force on the conductor.
    const ReservoirSpec& l = scenario.lead(0);
    ReservoirSpec& u = scenario.reservoirs[2];
    const double beta_u = l.beta - force_energy;
    require(beta_u > 0.0, ErrorKind::Configuration,
            "force_E target requires beta_u = beta - force_E > 0");
    u = ReservoirSpec(u.id, beta_u, u.mu, u.gamma, u.spin);
    ReservoirSpec& lm = scenario.reservoirs[0];
    const ReservoirSpec& r = scenario.lead(1);
    const double mu_l = (force_particle + r.beta * r.mu) / lm.beta;
    lm = ReservoirSpec(lm.id, lm.beta, mu_l, lm.gamma, lm.spin);
    return scenario;
  }
  // Two-terminal and single-lead reduced family: re-solve lead l against the
  // reference lead r.
  const ReservoirSpec& reference = scenario.lead(1);
  const double beta_l = reference.beta - force_energy;
  require(beta_l > 0.0, ErrorKind::Configuration,
          "force_E target requires beta_l = beta_ref - force_E > 0");
  const double mu_l = (force_particle + reference.beta * reference.mu) / beta_l;
  ReservoirSpec& l = scenario.reservoirs[0];
  l = ReservoirSpec(l.id, beta_l, mu_l, l.gamma, l.spin);
  return scenario;
}

Scenario apply_params(const Scenario& base,
                      const std::vector<std::pair<std::string, double>>& targets) {
  Scenario scenario = base;
  bool any_force = false;
  for (const auto& [param, value] : targets) {
    if (kForceParams.count(param)) {
      any_force = true;
      continue;
    }
    scenario = apply_direct_param(std::move(scenario), param, value);
  }
  if (any_force) {
    ForcePairValues forces = scenario_forces(scenario);
    for (const auto& [param, value] : targets) {
      if (param == "force_E") forces.energy = value;
      if (param == "force_N") forces.particle = value;
    }
    scenario = apply_forces(std::move(scenario), forces.energy, forces.particle);
  }
  return scenario;
}

std::vector<double> axis_values(const SweepAxis& axis) {
  std::vector<double> values(static_cast<std::size_t>(axis.count));
  for (int i = 0; i < axis.count; ++i) {
    values[static_cast<std::size_t>(i)] =
        axis.count == 1 ? axis.start
                        : axis.start + (axis.stop - axis.start) * static_cast<double>(i) /
                                           static_cast<double>(axis.count - 1);
  }
  return values;
}

struct SweepLayout {
  std::vector<std::string> force_columns;  // header names for the force block
  bool has_cycle_flux = false;
  bool has_label = false;
};

SweepLayout sweep_layout(const Scenario& scenario) {
  SweepLayout layout;
  layout.has_cycle_flux = scenario.is_cqd();
  const std::string l = scenario.lead(0).id;
  if (!scenario.is_cqd()) {
    layout.force_columns = {"force_E_" + l, "force_N_" + l};
    layout.has_label = true;
    return layout;
  }
  const std::string u = scenario.lead(2).id;
  switch (scenario.reduction) {
    case Reduction::None:
      layout.force_columns = {"force_E_" + l, "force_E_" + u, "force_N_" + l};
      layout.has_label = false;
      break;
    case Reduction::SB:
      layout.force_columns = {"force_E_" + u, "force_N_" + l};
      layout.has_label = true;
      break;
    case Reduction::ICC:
      layout.force_columns = {"force_E_" + l, "force_N_" + l};
      layout.has_label = true;
      break;
  }
  return layout;
}

struct EvaluatedPoint {
  Solution solution;
  std::vector<double> forces;
  std::string label;
};

EvaluatedPoint evaluate_point(const Scenario& scenario, double tol) {
  EvaluatedPoint out;
  out.solution = solve_scenario(scenario);
  const SteadyReport& report = out.solution.report;
  if (!scenario.is_cqd()) {
    const ForceFluxView view = make_two_terminal_view(scenario, report);
    out.forces = {view.pairs[0].force, view.pairs[1].force};
    out.label = std::string(to_string(classify_regime(view, tol)));
    return out;
  }
  if (scenario.reduction == Reduction::None) {
    const ForceFluxView view = make_three_terminal_view(scenario, report, Elimination::R);
    out.forces = {view.pairs[0].force, view.pairs[1].force, view.pairs[2].force};
    return out;
  }
  const ForceFluxView view = make_reduced_view(scenario, report);
  out.forces = {view.pairs[0].force, view.pairs[1].force};
  out.label = std::string(to_string(classify_regime(view, tol)));
  return out;
}

}  // namespace

Scenario parse_config(const json& document) {
  if (!document.is_object()) config_error("$", "expected an object");
  check_keys(document, "$", {"model", "dots", "kappa_c", "kappa_s", "reservoirs", "reduction"});
  const std::string model = as_string(get_required(document, "$", "model"), "$.model");
  if (model != "single_qd" && model != "cqd")
    config_error("$.model", "expected \"single_qd\" or \"cqd\"");

  const auto leads = parse_reservoirs(get_required(document, "$", "reservoirs"));
  const json& dots = get_required(document, "$", "dots");
  if (!dots.is_object()) config_error("$.dots", "expected an object");

  const double kappa_c =
      document.contains("kappa_c") ? as_number(document["kappa_c"], "$.kappa_c") : 0.0;
  const double kappa_s =
      document.contains("kappa_s") ? as_number(document["kappa_s"], "$.kappa_s") : 0.0;

  Scenario scenario = [&] {
    if (model == "single_qd") {
      if (leads.size() != 2)
        config_error("$.reservoirs", "model \"single_qd\" takes exactly two reservoirs "
                                     "with ids \"l\" and \"r\"");
      check_keys(dots, "$.dots", {"single"});
      const double epsilon = dot_epsilon(dots, "$.dots", "single");
      if (kappa_c != 0.0)
        config_error("$.kappa_c", "single-dot systems have kappa_c = kappa_s = 0");
      if (kappa_s != 0.0)
        config_error("$.kappa_s", "single-dot systems have kappa_c = kappa_s = 0");
      try {
        return single_qd_two_terminal(epsilon, take_lead(leads, "l"), take_lead(leads, "r"));
      } catch (const Error& error) {
        config_error("$", error.what());
      }
    }
    if (leads.size() != 3)
      config_error("$.reservoirs", "model \"cqd\" takes exactly three reservoirs with "
                                   "ids \"l\", \"r\" and \"u\"");
    check_keys(dots, "$.dots", {"b", "u"});
    const double eps_b = dot_epsilon(dots, "$.dots", "b");
    const double eps_u = dot_epsilon(dots, "$.dots", "u");
    if (kappa_c < 0.0) config_error("$.kappa_c", "kappa_c >= 0 violated");
    if (kappa_s < 0.0) config_error("$.kappa_s", "kappa_s >= 0 violated");
    try {
      return cqd_three_terminal(eps_b, eps_u, kappa_c, kappa_s, take_lead(leads, "l"),
                                take_lead(leads, "r"), take_lead(leads, "u"));
    } catch (const Error& error) {
      config_error("$", error.what());
    }
  }();

  if (document.contains("reduction") && !document["reduction"].is_null()) {
    const std::string reduction = as_string(document["reduction"], "$.reduction");
    if (reduction == "sb") {
      scenario = sb_reduction(std::move(scenario));
    } else if (reduction == "icc") {
      scenario = icc_reduction(std::move(scenario));
    } else {
      config_error("$.reduction", "expected null, \"sb\" or \"icc\"");
    }
  }
  return scenario;
}

Scenario parse_config_text(std::string_view text) {
  json document;
  try {
    document = json::parse(text);
  } catch (const json::parse_error& error) {
    raise(ErrorKind::Configuration, std::string("invalid JSON: ") + error.what());
  }
  return parse_config(document);
}

json serialize_scenario(const Scenario& scenario) {
  json document;
  document["model"] = scenario.is_cqd() ? "cqd" : "single_qd";
  json dots;
  if (scenario.is_cqd()) {
    dots["b"] = {{"epsilon", scenario.system.dot(DotLabel::Bottom).epsilon}};
    dots["u"] = {{"epsilon", scenario.system.dot(DotLabel::Upper).epsilon}};
    document["kappa_c"] = scenario.system.kappa_c;
    document["kappa_s"] = scenario.system.kappa_s;
  } else {
    dots["single"] = {{"epsilon", scenario.system.dots[0].epsilon}};
  }
  document["dots"] = dots;
  json leads = json::array();
  for (const auto& lead : scenario.reservoirs) {
    leads.push_back({{"id", lead.id},
                     {"beta", lead.beta},
                     {"mu", lead.mu},
                     {"gamma", lead.gamma},
                     {"spin", std::string(to_string(lead.spin))}});
  }
  document["reservoirs"] = leads;
  document["reduction"] = scenario.reduction == Reduction::None
                              ? json(nullptr)
                              : json(std::string(to_string(scenario.reduction)));
  return document;
}

json run_steady_document(const Scenario& scenario, double tol) {
  const Solution solution = solve_scenario(scenario);
  const SteadyReport& report = solution.report;

  json document;
  document["meta"] = meta_block();
  document["scenario"] = serialize_scenario(scenario);

  json populations;
  for (std::size_t i = 0; i < report.populations.size(); ++i) {
    populations[std::string(1, solution.graph.basis[i].label)] = report.populations[i];
  }
  document["populations"] = populations;

  json currents;
  for (const auto& [id, value] : report.currents) {
    currents[id] = {{"J_E", value.energy}, {"J_N", value.particle}, {"J_Q", value.heat}};
  }
  document["currents"] = currents;
  if (report.cycle_flux) document["cycle_flux"] = *report.cycle_flux;
  document["sigma_dot"] = report.sigma_dot;
  document["solver_residual"] = report.residual;

  json forces;
  json regime = nullptr;
  if (!scenario.is_cqd()) {
    const ForceFluxView l_view = make_two_terminal_view(scenario, report, true);
    const ForceFluxView r_view = make_two_terminal_view(scenario, report, false);
    forces[l_view.representation] = view_to_json(report, l_view);
    forces[r_view.representation] = view_to_json(report, r_view);
    regime = std::string(to_string(classify_regime(l_view, tol)));
  } else {
    for (const Elimination eliminate : {Elimination::L, Elimination::R, Elimination::U}) {
      const ForceFluxView view = make_three_terminal_view(scenario, report, eliminate);
      forces[view.representation] = view_to_json(report, view);
    }
    if (scenario.reduction != Reduction::None) {
      const ForceFluxView view = make_reduced_view(scenario, report);
      forces[view.representation] = view_to_json(report, view);
      regime = std::string(to_string(classify_regime(view, tol)));
    }
  }
  document["forces"] = forces;
  document["regime"] = regime;
  document["warnings"] = scenario.warnings;
  return document;
}

std::string run_sweep_csv(const Scenario& scenario, const std::vector<SweepAxis>& axes,
                          double tol) {
  require(axes.size() == 1 || axes.size() == 2, ErrorKind::Configuration,
          "sweep takes one or two axes");
  for (const auto& axis : axes) {
    require(axis.count >= 1, ErrorKind::Configuration,
            "axis '" + axis.param + "': count must be >= 1");
    require(std::isfinite(axis.start) && std::isfinite(axis.stop), ErrorKind::Configuration,
            "axis '" + axis.param + "': bounds must be finite");
    require(!(axis.start == axis.stop && axis.count > 1), ErrorKind::Configuration,
            "axis '" + axis.param + "': degenerate axis (start = stop with count > 1)");
  }
  if (axes.size() == 2)
    require(axes[0].param != axes[1].param, ErrorKind::Configuration,
            "both axes sweep '" + axes[0].param + "'");

  // Surface parameter errors (unknown names, force axes on an unreduced
  // coupled pair) before starting the grid.
  {
    std::vector<std::pair<std::string, double>> probe;
    for (const auto& axis : axes) probe.emplace_back(axis.param, axis.start);
    apply_params(scenario, probe);
  }

  const SweepLayout layout = sweep_layout(scenario);
  std::vector<std::string> header;
  for (const auto& axis : axes) header.push_back(axis.param);
  for (const auto& lead : scenario.reservoirs) {
    header.push_back("J_E_" + lead.id);
    header.push_back("J_N_" + lead.id);
    header.push_back("J_Q_" + lead.id);
  }
  if (layout.has_cycle_flux) header.push_back("gamma_plus");
  header.push_back("sigma_dot");
  for (const auto& name : layout.force_columns) header.push_back(name);
  header.push_back("label");

  std::vector<std::vector<double>> grids;
  for (const auto& axis : axes) grids.push_back(axis_values(axis));
  const std::size_t inner = axes.size() == 2 ? grids[1].size() : 1;
  const std::size_t total = grids[0].size() * inner;

  std::vector<std::string> rows(total);
  parallel_for(total, [&](std::size_t index) {
    const std::size_t i0 = index / inner;
    const std::size_t i1 = index % inner;
    std::vector<std::pair<std::string, double>> targets;
    targets.emplace_back(axes[0].param, grids[0][i0]);
    if (axes.size() == 2) targets.emplace_back(axes[1].param, grids[1][i1]);

    const Scenario point = apply_params(scenario, targets);
    const EvaluatedPoint evaluated = evaluate_point(point, tol);
    const SteadyReport& report = evaluated.solution.report;

    std::vector<std::string> fields;
    for (const auto& [param, value] : targets) fields.push_back(format17(value));
    for (const auto& lead : point.reservoirs) {
      const Currents& c = report.currents.at(lead.id);
      fields.push_back(format17(c.energy));
      fields.push_back(format17(c.particle));
      fields.push_back(format17(c.heat));
    }
    if (layout.has_cycle_flux) fields.push_back(format17(report.cycle_flux.value_or(0.0)));
    fields.push_back(format17(report.sigma_dot));
    for (const double force : evaluated.forces) fields.push_back(format17(force));
    fields.push_back(evaluated.label);

    std::string row;
    for (std::size_t f = 0; f < fields.size(); ++f) {
      if (f) row += ',';
      row += fields[f];
    }
    rows[index] = std::move(row);
  });

  std::string csv;
  for (std::size_t h = 0; h < header.size(); ++h) {
    if (h) csv += ',';
    csv += header[h];
  }
  csv += '\n';
  for (const auto& row : rows) {
    csv += row;
    csv += '\n';
  }
  return csv;
}

json run_onsager_document(const Scenario& scenario, double step) {
  const OnsagerMatrix matrix = onsager_matrix(scenario, step);
  const double scale = std::max({std::abs(matrix.energy_particle),
                                 std::abs(matrix.particle_energy), 1e-12});
  json document;
  document["meta"] = meta_block();
  document["onsager"] = {{"L_EE", matrix.energy_energy},
                         {"L_EN", matrix.energy_particle},
                         {"L_NE", matrix.particle_energy},
                         {"L_NN", matrix.particle_particle}};
  document["reciprocity_residual"] = matrix.reciprocity_residual();
  document["reciprocity_ok"] = matrix.reciprocity_residual() <= 1e-3 * scale;
  document["direct_coefficients_positive"] = matrix.direct_coefficients_positive();
  document["reference"] = {{"beta", matrix.reference_beta}, {"mu", matrix.reference_mu}};
  document["step"] = matrix.step;
  return document;
}

json run_icc_scan_document(const Scenario& scenario, const ScanAxis& force_energy,
                           const ScanAxis& force_particle, const std::optional<ScanAxis>& kappa,
                           double tol) {
  const ScanSummary summary = scan_icc(scenario, force_energy, force_particle, kappa, tol);

  json document;
  document["meta"] = meta_block();
  json grid;
  grid["force_E"] = axis_to_json(force_energy);
  grid["force_N"] = axis_to_json(force_particle);
  grid["kappa"] = kappa ? axis_to_json(*kappa) : json(nullptr);
  document["grid"] = grid;

  const std::string lead_l = scenario.lead(0).id;
  document["columns"] = {"force_E", "force_N", "kappa", "label", "J_E_" + lead_l,
                         "J_N_" + lead_l, "sigma_dot"};
  json points = json::array();
  bool second_law_ok = true;
  for (const auto& point : summary.points) {
    points.push_back({point.force_energy, point.force_particle, point.kappa,
                      std::string(to_string(point.label)), point.flux_energy,
                      point.flux_particle, point.sigma_dot});
    if (point.sigma_dot < -1e-12) second_law_ok = false;
  }
  document["points"] = points;

  json counts;
  for (const auto& [label, count] : summary.counts) counts[std::string(to_string(label))] = count;
  document["counts"] = counts;
  document["total_points"] = summary.points.size();
  document["second_law_ok"] = second_law_ok;

  const auto witness_block = [&](const std::vector<std::size_t>& indices) {
    json block;
    block["count"] = indices.size();
    block["found"] = !indices.empty();
    json witnesses = json::array();
    for (std::size_t k = 0; k < indices.size() && k < 32; ++k) {
      const ScanPoint& point = summary.points[indices[k]];
      witnesses.push_back({{"force_E", point.force_energy},
                           {"force_N", point.force_particle},
                           {"kappa", point.kappa},
                           {"J_E_" + lead_l, point.flux_energy},
                           {"J_N_" + lead_l, point.flux_particle},
                           {"sigma_dot", point.sigma_dot}});
    }
    block["witnesses"] = witnesses;
    return block;
  };
  document["genuine_icc"] = witness_block(summary.genuine_icc);
  document["pseudo_icc"] = witness_block(summary.pseudo_icc);
  document["certification"] =
      summary.genuine_icc.empty() ? "no-icc-found" : "icc-witnesses-found";
  return document;
}

}  // namespace qdt
