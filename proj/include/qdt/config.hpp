#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qdt/scenario.hpp"
#include "qdt/thermo.hpp"

namespace qdt {

/// Strict scenario schema:
/// {
///   "model": "single_qd" | "cqd",
///   "dots": {"single": {"epsilon": x}} or {"b": {...}, "u": {...}},
///   "kappa_c": x, "kappa_s": x,            (coupled model only)
///   "reservoirs": [{"id","beta","mu","gamma","spin"}...],
///   "reduction": null | "sb" | "icc"
/// }
/// Unknown keys are rejected with the offending path; invariant violations
/// quote the invariant. Reservoir ids are fixed by the topology: l and r for
/// the single dot, l, r and u for the coupled pair.
Scenario parse_config(const nlohmann::json& document);
Scenario parse_config_text(std::string_view text);

nlohmann::json serialize_scenario(const Scenario& scenario);

/// Full steady-state report: populations, per-reservoir currents, cycle flux,
/// entropy production, every force representation with its bilinear residual,
/// and the regime label where the representation supports one.
nlohmann::json run_steady_document(const Scenario& scenario, double tol = 1e-10);

struct SweepAxis {
  std::string param;  // kappa | kappa_c | kappa_s | epsilon[_b|_u] |
                      // <lead>.beta | <lead>.mu | <lead>.gamma |
                      // force_E | force_N
  double start = 0.0;
  double stop = 0.0;
  int count = 0;
};

/// CSV table over a 1- or 2-axis grid: swept parameters, per-reservoir
/// currents, cycle flux, entropy production, forces and regime label, one row
/// per point in lexicographic grid order, 17 significant digits.
std::string run_sweep_csv(const Scenario& scenario, const std::vector<SweepAxis>& axes,
                          double tol = 1e-10);

nlohmann::json run_onsager_document(const Scenario& scenario, double step = 1e-4);

nlohmann::json run_icc_scan_document(const Scenario& scenario, const ScanAxis& force_energy,
                                     const ScanAxis& force_particle,
                                     const std::optional<ScanAxis>& kappa, double tol = 1e-10);

}  // namespace qdt
