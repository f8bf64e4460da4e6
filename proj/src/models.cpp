#include "qdt/models.hpp"

#include <algorithm>
#include <sstream>

#include "qdt/errors.hpp"

namespace qdt {

namespace {

std::string format_overwrite(const std::string& id, double from, double to) {
  std::ostringstream out;
  out << "reduction overwrote beta_" << id << ": " << from << " -> " << to;
  return out.str();
}

}  // namespace

Scenario single_qd_two_terminal(double epsilon, ReservoirSpec l, ReservoirSpec r) {
  std::vector<DotSpec> dots{DotSpec(DotLabel::Single, epsilon)};
  std::vector<TunnelCoupling> couplings{{DotLabel::Single, l.id}, {DotLabel::Single, r.id}};
  Scenario scenario{SystemSpec(std::move(dots), 0.0, 0.0, std::move(couplings)),
                    {std::move(l), std::move(r)},
                    Reduction::None,
                    {}};
  validate_scenario(scenario);
  return scenario;
}

Scenario cqd_three_terminal(double epsilon_b, double epsilon_u, double kappa_c, double kappa_s,
                            ReservoirSpec l, ReservoirSpec r, ReservoirSpec u) {
  // A spin-spin term presumes polarized dots; the bottom channel carries
  // spin-down electrons, the upper channel spin-up.
  const bool polarized = kappa_s > 0.0;
  std::vector<DotSpec> dots{
      DotSpec(DotLabel::Bottom, epsilon_b, polarized ? Spin::Down : Spin::Unpolarized),
      DotSpec(DotLabel::Upper, epsilon_u, polarized ? Spin::Up : Spin::Unpolarized)};
  std::vector<TunnelCoupling> couplings{{DotLabel::Bottom, l.id},
                                        {DotLabel::Bottom, r.id},
                                        {DotLabel::Upper, u.id}};
  Scenario scenario{SystemSpec(std::move(dots), kappa_c, kappa_s, std::move(couplings)),
                    {std::move(l), std::move(r), std::move(u)},
                    Reduction::None,
                    {}};
  if (epsilon_b >= epsilon_u) {
    scenario.warnings.push_back("epsilon_b >= epsilon_u: the usual convention places the "
                                "bottom level below the upper level");
  }
  validate_scenario(scenario);
  return scenario;
}

Scenario sb_reduction(Scenario cqd) {
  require(cqd.is_cqd() && cqd.reservoirs.size() == 3, ErrorKind::Topology,
          "sb_reduction applies to the three-terminal coupled-dot topology");
  ReservoirSpec& l = cqd.reservoirs[0];
  ReservoirSpec& r = cqd.reservoirs[1];
  if (r.beta != l.beta) {
    cqd.warnings.push_back(format_overwrite(r.id, r.beta, l.beta));
    r = ReservoirSpec(r.id, l.beta, r.mu, r.gamma, r.spin);
  }
  cqd.reduction = Reduction::SB;
  return cqd;
}

Scenario icc_reduction(Scenario cqd) {
  require(cqd.is_cqd() && cqd.reservoirs.size() == 3, ErrorKind::Topology,
          "icc_reduction applies to the three-terminal coupled-dot topology");
  ReservoirSpec& r = cqd.reservoirs[1];
  ReservoirSpec& u = cqd.reservoirs[2];
  if (u.beta != r.beta) {
    cqd.warnings.push_back(format_overwrite(u.id, u.beta, r.beta));
    u = ReservoirSpec(u.id, r.beta, u.mu, u.gamma, u.spin);
  }
  cqd.reduction = Reduction::ICC;
  return cqd;
}

Scenario with_kappa(const Scenario& cqd, double kappa) {
  require(cqd.is_cqd() && cqd.reservoirs.size() == 3, ErrorKind::Topology,
          "with_kappa applies to the three-terminal coupled-dot topology");
  Scenario out = cqd_three_terminal(cqd.system.dot(DotLabel::Bottom).epsilon,
                                    cqd.system.dot(DotLabel::Upper).epsilon,
                                    std::max(kappa, 0.0), std::max(-kappa, 0.0),
                                    cqd.reservoirs[0], cqd.reservoirs[1], cqd.reservoirs[2]);
  out.reduction = cqd.reduction;
  return out;
}

}  // namespace qdt
