#pragma once

#include "qdt/scenario.hpp"

namespace qdt {

/// One dot tunnel-coupled to both leads; eigenstates A (empty) and B (filled).
Scenario single_qd_two_terminal(double epsilon, ReservoirSpec l, ReservoirSpec r);

/// Two capacitively coupled dots: the bottom dot carries leads l and r, the
/// upper dot couples to lead u only. A nonzero spin-spin coupling polarizes
/// the dots (bottom down, upper up) so the effective interaction
/// kappa = kappa_c - kappa_s may be attractive.
Scenario cqd_three_terminal(double epsilon_b, double epsilon_u, double kappa_c, double kappa_s,
                            ReservoirSpec l, ReservoirSpec r, ReservoirSpec u);

/// Equalizes the conductor temperatures (beta_r := beta_l), leaving the
/// energy force on the upper lead and the particle force on the conductor:
/// the thermoelectric-harvester configuration.
Scenario sb_reduction(Scenario cqd);

/// Equalizes the reference temperatures (beta_u := beta_r), leaving both
/// forces referenced to lead l, mutually parallel or antiparallel.
Scenario icc_reduction(Scenario cqd);

/// Rebuilds a coupled-dot scenario at a different effective interaction,
/// splitting kappa into (kappa_c, kappa_s) = (max(kappa,0), max(-kappa,0)).
Scenario with_kappa(const Scenario& cqd, double kappa);

}  // namespace qdt
