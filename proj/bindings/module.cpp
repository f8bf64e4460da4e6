#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qdt/config.hpp"
#include "qdt/errors.hpp"
#include "qdt/models.hpp"
#include "qdt/oracle.hpp"
#include "qdt/rates.hpp"
#include "qdt/steady.hpp"
#include "qdt/thermo.hpp"
#include "qdt/version.hpp"

namespace py = pybind11;
using namespace qdt;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Steady-state transport in quantum-dot systems coupled to fermionic leads";
  m.attr("__version__") = kVersion;

  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& error) {
      switch (error.kind()) {
        case ErrorKind::InvalidParameter:
        case ErrorKind::Configuration:
        case ErrorKind::Precondition:
        case ErrorKind::UnsupportedRepresentation:
          PyErr_SetString(PyExc_ValueError, error.what());
          break;
        case ErrorKind::Lookup:
          PyErr_SetString(PyExc_KeyError, error.what());
          break;
        default:
          PyErr_SetString(PyExc_RuntimeError, error.what());
      }
    }
  });

  py::enum_<Spin>(m, "Spin")
      .value("UP", Spin::Up)
      .value("DOWN", Spin::Down)
      .value("UNPOLARIZED", Spin::Unpolarized);

  py::enum_<DotLabel>(m, "DotLabel")
      .value("SINGLE", DotLabel::Single)
      .value("BOTTOM", DotLabel::Bottom)
      .value("UPPER", DotLabel::Upper);

  py::enum_<Direction>(m, "Direction")
      .value("EXCITATION", Direction::Excitation)
      .value("DEEXCITATION", Direction::Deexcitation);

  py::enum_<FluxKind>(m, "FluxKind")
      .value("ENERGY", FluxKind::Energy)
      .value("PARTICLE", FluxKind::Particle);

  py::enum_<Reduction>(m, "Reduction")
      .value("NONE", Reduction::None)
      .value("SB", Reduction::SB)
      .value("ICC", Reduction::ICC);

  py::enum_<Elimination>(m, "Elimination")
      .value("L", Elimination::L)
      .value("R", Elimination::R)
      .value("U", Elimination::U);

  py::enum_<RegimeLabel>(m, "RegimeLabel")
      .value("EQUILIBRIUM", RegimeLabel::Equilibrium)
      .value("SEEBECK_NORMAL", RegimeLabel::SeebeckNormal)
      .value("SEEBECK_UNCONVENTIONAL", RegimeLabel::SeebeckUnconventional)
      .value("PELTIER_NORMAL", RegimeLabel::PeltierNormal)
      .value("PELTIER_UNCONVENTIONAL", RegimeLabel::PeltierUnconventional)
      .value("CROSS_EFFECT_ENGINE", RegimeLabel::CrossEffectEngine)
      .value("CROSS_EFFECT_REFRIGERATOR", RegimeLabel::CrossEffectRefrigerator)
      .value("PARALLEL_DISSIPATIVE", RegimeLabel::ParallelDissipative)
      .value("PSEUDO_ICC", RegimeLabel::PseudoIcc)
      .value("GENUINE_ICC", RegimeLabel::GenuineIcc);

  py::class_<ReservoirSpec>(m, "ReservoirSpec")
      .def(py::init<std::string, double, double, double, Spin>(), py::arg("id"), py::arg("beta"),
           py::arg("mu"), py::arg("gamma"), py::arg("spin") = Spin::Unpolarized)
      .def_readonly("id", &ReservoirSpec::id)
      .def_readonly("beta", &ReservoirSpec::beta)
      .def_readonly("mu", &ReservoirSpec::mu)
      .def_readonly("gamma", &ReservoirSpec::gamma)
      .def_readonly("spin", &ReservoirSpec::spin)
      .def("__repr__", [](const ReservoirSpec& r) {
        return "ReservoirSpec(id='" + r.id + "', beta=" + std::to_string(r.beta) +
               ", mu=" + std::to_string(r.mu) + ", gamma=" + std::to_string(r.gamma) + ")";
      });

  py::class_<DotSpec>(m, "DotSpec")
      .def(py::init<DotLabel, double, Spin>(), py::arg("label"), py::arg("epsilon"),
           py::arg("spin") = Spin::Unpolarized)
      .def_readonly("label", &DotSpec::label)
      .def_readonly("epsilon", &DotSpec::epsilon)
      .def_readonly("spin", &DotSpec::spin);

  py::class_<SystemSpec>(m, "SystemSpec")
      .def_readonly("dots", &SystemSpec::dots)
      .def_readonly("kappa_c", &SystemSpec::kappa_c)
      .def_readonly("kappa_s", &SystemSpec::kappa_s)
      .def("kappa", &SystemSpec::kappa);

  py::class_<EigenState>(m, "EigenState")
      .def_readonly("label", &EigenState::label)
      .def_readonly("occupations", &EigenState::occupations)
      .def_readonly("energy", &EigenState::energy)
      .def("total_occupation", &EigenState::total_occupation);

  py::class_<Transition>(m, "Transition")
      .def_readonly("from_state", &Transition::from)
      .def_readonly("to_state", &Transition::to)
      .def_readonly("omega", &Transition::omega)
      .def_readonly("reservoir", &Transition::reservoir)
      .def_readonly("dot", &Transition::dot)
      .def_readonly("direction", &Transition::direction);

  py::class_<TransitionGraph>(m, "TransitionGraph")
      .def_readonly("basis", &TransitionGraph::basis)
      .def_readonly("transitions", &TransitionGraph::transitions);

  py::class_<RateChannel>(m, "RateChannel")
      .def_readonly("transition", &RateChannel::transition)
      .def_readonly("rate", &RateChannel::rate);

  py::class_<RateMatrix>(m, "RateMatrix")
      .def_readonly("generator", &RateMatrix::generator)
      .def_readonly("channels", &RateMatrix::channels);

  py::class_<Currents>(m, "Currents")
      .def_readonly("energy", &Currents::energy)
      .def_readonly("particle", &Currents::particle)
      .def_readonly("heat", &Currents::heat);

  py::class_<SteadyReport>(m, "SteadyReport")
      .def_readonly("populations", &SteadyReport::populations)
      .def_readonly("currents", &SteadyReport::currents)
      .def_readonly("cycle_flux", &SteadyReport::cycle_flux)
      .def_readonly("sigma_dot", &SteadyReport::sigma_dot)
      .def_readonly("residual", &SteadyReport::residual);

  py::class_<ForcePair>(m, "ForcePair")
      .def_readonly("reservoir", &ForcePair::reservoir)
      .def_readonly("kind", &ForcePair::kind)
      .def_readonly("force", &ForcePair::force)
      .def_readonly("flux", &ForcePair::flux);

  py::class_<ForceFluxView>(m, "ForceFluxView")
      .def_readonly("representation", &ForceFluxView::representation)
      .def_readonly("mutually_parallel", &ForceFluxView::mutually_parallel)
      .def_readonly("pairs", &ForceFluxView::pairs)
      .def("sigma_check", &ForceFluxView::sigma_check);

  py::class_<OnsagerMatrix>(m, "OnsagerMatrix")
      .def_readonly("L_EE", &OnsagerMatrix::energy_energy)
      .def_readonly("L_EN", &OnsagerMatrix::energy_particle)
      .def_readonly("L_NE", &OnsagerMatrix::particle_energy)
      .def_readonly("L_NN", &OnsagerMatrix::particle_particle)
      .def_readonly("reference_beta", &OnsagerMatrix::reference_beta)
      .def_readonly("reference_mu", &OnsagerMatrix::reference_mu)
      .def_readonly("step", &OnsagerMatrix::step)
      .def("reciprocity_residual", &OnsagerMatrix::reciprocity_residual)
      .def("direct_coefficients_positive", &OnsagerMatrix::direct_coefficients_positive);

  py::class_<Scenario>(m, "Scenario")
      .def_readonly("system", &Scenario::system)
      .def_readonly("reservoirs", &Scenario::reservoirs)
      .def_readonly("reduction", &Scenario::reduction)
      .def_readonly("warnings", &Scenario::warnings)
      .def("is_cqd", &Scenario::is_cqd);

  py::class_<Solution>(m, "Solution")
      .def_readonly("graph", &Solution::graph)
      .def_readonly("rates", &Solution::rates)
      .def_readonly("report", &Solution::report);

  py::class_<Trajectory>(m, "Trajectory")
      .def_readonly("times", &Trajectory::times)
      .def_readonly("states", &Trajectory::states)
      .def("final_state", &Trajectory::final_state);

  py::class_<ScanAxis>(m, "ScanAxis")
      .def(py::init<double, double, int>(), py::arg("start"), py::arg("stop"), py::arg("count"))
      .def_readwrite("start", &ScanAxis::start)
      .def_readwrite("stop", &ScanAxis::stop)
      .def_readwrite("count", &ScanAxis::count);

  py::class_<ScanPoint>(m, "ScanPoint")
      .def_readonly("force_energy", &ScanPoint::force_energy)
      .def_readonly("force_particle", &ScanPoint::force_particle)
      .def_readonly("kappa", &ScanPoint::kappa)
      .def_readonly("label", &ScanPoint::label)
      .def_readonly("flux_energy", &ScanPoint::flux_energy)
      .def_readonly("flux_particle", &ScanPoint::flux_particle)
      .def_readonly("sigma_dot", &ScanPoint::sigma_dot);

  py::class_<ScanSummary>(m, "ScanSummary")
      .def_readonly("points", &ScanSummary::points)
      .def_readonly("counts", &ScanSummary::counts)
      .def_readonly("genuine_icc", &ScanSummary::genuine_icc)
      .def_readonly("pseudo_icc", &ScanSummary::pseudo_icc);

  py::class_<ForcePairValues>(m, "ForcePairValues")
      .def_readonly("energy", &ForcePairValues::energy)
      .def_readonly("particle", &ForcePairValues::particle);

  m.def("fermi_plus", &fermi_plus, py::arg("beta"), py::arg("mu"), py::arg("omega"));
  m.def("fermi_minus", &fermi_minus, py::arg("beta"), py::arg("mu"), py::arg("omega"));
  m.def("build_eigenbasis", &build_eigenbasis, py::arg("system"));
  m.def("build_transition_graph", &build_transition_graph, py::arg("system"),
        py::arg("reservoirs"));
  m.def("build_rate_matrix", &build_rate_matrix, py::arg("graph"), py::arg("reservoirs"));

  m.def("solve_steady_state", &solve_steady_state, py::arg("rates"));
  m.def("net_transition_rate", &net_transition_rate, py::arg("rates"), py::arg("populations"),
        py::arg("from_state"), py::arg("to_state"), py::arg("reservoir"));
  m.def("reservoir_currents", &reservoir_currents, py::arg("rates"), py::arg("populations"),
        py::arg("reservoirs"));
  m.def("cycle_flux", &cycle_flux, py::arg("rates"), py::arg("populations"));
  m.def("solve_scenario", &solve_scenario, py::arg("scenario"));

  m.def("entropy_production_rate", &entropy_production_rate, py::arg("currents"),
        py::arg("reservoirs"));
  m.def("forces_two_terminal", &forces_two_terminal, py::arg("l"), py::arg("r"));
  m.def("forces_three_terminal", &forces_three_terminal, py::arg("reservoirs"),
        py::arg("eliminate"));
  m.def("make_two_terminal_view", &make_two_terminal_view, py::arg("scenario"), py::arg("report"),
        py::arg("l_based") = true);
  m.def("make_three_terminal_view", &make_three_terminal_view, py::arg("scenario"),
        py::arg("report"), py::arg("eliminate"));
  m.def("make_reduced_view", &make_reduced_view, py::arg("scenario"), py::arg("report"));
  m.def("bilinear_check", &bilinear_check, py::arg("report"), py::arg("view"));
  m.def("onsager_matrix", &onsager_matrix, py::arg("equilibrium"), py::arg("step") = 1e-4);
  m.def("classify_regime",
        py::overload_cast<const ForceFluxView&, double>(&classify_regime), py::arg("view"),
        py::arg("tol") = 1e-10);
  m.def("classify_regime",
        py::overload_cast<double, double, double, double, double, bool>(&classify_regime),
        py::arg("force_energy"), py::arg("flux_energy"), py::arg("force_particle"),
        py::arg("flux_particle"), py::arg("tol"), py::arg("mutually_parallel"));
  m.def("scan_icc", &scan_icc, py::arg("base"), py::arg("force_energy"),
        py::arg("force_particle"), py::arg("kappa") = std::nullopt, py::arg("tol") = 1e-10);

  m.def("single_qd_two_terminal", &single_qd_two_terminal, py::arg("epsilon"), py::arg("l"),
        py::arg("r"));
  m.def("cqd_three_terminal", &cqd_three_terminal, py::arg("epsilon_b"), py::arg("epsilon_u"),
        py::arg("kappa_c"), py::arg("kappa_s"), py::arg("l"), py::arg("r"), py::arg("u"));
  m.def("sb_reduction", &sb_reduction, py::arg("cqd"));
  m.def("icc_reduction", &icc_reduction, py::arg("cqd"));
  m.def("with_kappa", &with_kappa, py::arg("cqd"), py::arg("kappa"));

  m.def("integrate", &integrate, py::arg("rates"), py::arg("p0"), py::arg("t_final"),
        py::arg("dt"), py::arg("sample_stride") = 1);
  m.def("gibbs_state", &gibbs_state, py::arg("system"), py::arg("beta"), py::arg("mu"));
  m.def("relaxation_time", &relaxation_time, py::arg("rates"));
  m.def("integrate_to_steady", &integrate_to_steady, py::arg("rates"), py::arg("p0"));
  m.def("relative_entropy", &relative_entropy, py::arg("p"), py::arg("q"));

  m.def("parse_config", [](const std::string& text) { return parse_config_text(text); },
        py::arg("text"));
  m.def("serialize_scenario",
        [](const Scenario& scenario) { return serialize_scenario(scenario).dump(2); },
        py::arg("scenario"));
  m.def("run_steady_json",
        [](const Scenario& scenario, double tol) { return run_steady_document(scenario, tol).dump(2); },
        py::arg("scenario"), py::arg("tol") = 1e-10);
  m.def("run_sweep_csv", &run_sweep_csv, py::arg("scenario"), py::arg("axes"),
        py::arg("tol") = 1e-10);
  m.def("run_onsager_json",
        [](const Scenario& scenario, double step) {
          return run_onsager_document(scenario, step).dump(2);
        },
        py::arg("scenario"), py::arg("step") = 1e-4);
  m.def("run_icc_scan_json",
        [](const Scenario& scenario, const ScanAxis& fe, const ScanAxis& fn,
           const std::optional<ScanAxis>& kappa, double tol) {
          return run_icc_scan_document(scenario, fe, fn, kappa, tol).dump(2);
        },
        py::arg("scenario"), py::arg("force_energy"), py::arg("force_particle"),
        py::arg("kappa") = std::nullopt, py::arg("tol") = 1e-10);

  py::class_<SweepAxis>(m, "SweepAxis")
      .def(py::init([](std::string param, double start, double stop, int count) {
             return SweepAxis{std::move(param), start, stop, count};
           }),
           py::arg("param"), py::arg("start"), py::arg("stop"), py::arg("count"))
      .def_readwrite("param", &SweepAxis::param)
      .def_readwrite("start", &SweepAxis::start)
      .def_readwrite("stop", &SweepAxis::stop)
      .def_readwrite("count", &SweepAxis::count);
}
