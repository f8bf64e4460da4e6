#include <doctest.h>

#include <cmath>
#include <random>

#include "qdt/errors.hpp"
#include "qdt/models.hpp"
#include "qdt/steady.hpp"
#include "qdt/thermo.hpp"

using namespace qdt;

namespace {

ReservoirSpec lead(const std::string& id, double beta, double mu, double gamma) {
  return ReservoirSpec(id, beta, mu, gamma);
}

Scenario random_cqd(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> beta_draw(0.1, 10.0);
  std::uniform_real_distribution<double> mu_draw(-5.0, 5.0);
  std::uniform_real_distribution<double> gamma_draw(0.01, 2.0);
  std::uniform_real_distribution<double> eps_draw(0.1, 5.0);
  std::uniform_real_distribution<double> kappa_draw(0.0, 3.0);
  return cqd_three_terminal(eps_draw(rng), eps_draw(rng), kappa_draw(rng), kappa_draw(rng),
                            lead("l", beta_draw(rng), mu_draw(rng), gamma_draw(rng)),
                            lead("r", beta_draw(rng), mu_draw(rng), gamma_draw(rng)),
                            lead("u", beta_draw(rng), mu_draw(rng), gamma_draw(rng)));
}

}  // namespace

TEST_SUITE("thermo") {

TEST_CASE("entropy production vanishes in equilibrium") {
  const auto scenario =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.5, 1.0), lead("r", 1.0, 0.5, 1.0));
  const auto solution = solve_scenario(scenario);
  CHECK(std::abs(solution.report.sigma_dot) <= 1e-14);
}

TEST_CASE("pure thermal bias: entropy production from hot-to-cold heat flow") {
  const auto scenario =
      single_qd_two_terminal(1.0, lead("l", 0.5, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0));
  const auto solution = solve_scenario(scenario);
  const double j_e_l = solution.report.currents.at("l").energy;
  CHECK(j_e_l > 0.0);  // heat flows out of the hot left lead
  CHECK(solution.report.sigma_dot ==
        doctest::Approx((1.0 - 0.5) * j_e_l).epsilon(1e-12));
  CHECK(solution.report.sigma_dot > 0.0);
}

TEST_CASE("second law over random scenarios") {
  std::mt19937_64 rng(5150);
  for (int i = 0; i < 500; ++i) {
    const auto solution = solve_scenario(random_cqd(rng));
    CHECK(solution.report.sigma_dot >= -1e-12);
  }
}

TEST_CASE("two-terminal forces") {
  const auto identical = forces_two_terminal(lead("l", 1.0, 0.3, 1.0), lead("r", 1.0, 0.3, 0.5));
  CHECK(identical.energy == 0.0);
  CHECK(identical.particle == 0.0);

  const auto thermal = forces_two_terminal(lead("l", 1.0, 0.0, 1.0), lead("r", 2.0, 0.0, 1.0));
  CHECK(thermal.energy == 1.0);
  CHECK(thermal.particle == 0.0);

  const auto chemical = forces_two_terminal(lead("l", 1.0, 1.0, 1.0), lead("r", 1.0, 0.5, 1.0));
  CHECK(chemical.energy == 0.0);
  CHECK(chemical.particle == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("l-based and r-based two-terminal views agree on entropy production") {
  std::mt19937_64 rng(88);
  std::uniform_real_distribution<double> beta_draw(0.2, 5.0);
  std::uniform_real_distribution<double> mu_draw(-3.0, 3.0);
  for (int i = 0; i < 200; ++i) {
    const auto scenario =
        single_qd_two_terminal(1.3, lead("l", beta_draw(rng), mu_draw(rng), 0.8),
                               lead("r", beta_draw(rng), mu_draw(rng), 1.2));
    const auto solution = solve_scenario(scenario);
    const auto l_view = make_two_terminal_view(scenario, solution.report, true);
    const auto r_view = make_two_terminal_view(scenario, solution.report, false);
    CHECK(std::abs(l_view.sigma_check() - r_view.sigma_check()) <= 1e-12);
    CHECK(bilinear_check(solution.report, l_view) <=
          1e-10 * std::max(1.0, std::abs(solution.report.sigma_dot)));
    CHECK(bilinear_check(solution.report, r_view) <=
          1e-10 * std::max(1.0, std::abs(solution.report.sigma_dot)));
  }
}

TEST_CASE("all three-terminal eliminations reproduce the entropy production") {
  std::mt19937_64 rng(404);
  for (int i = 0; i < 200; ++i) {
    const auto scenario = random_cqd(rng);
    const auto solution = solve_scenario(scenario);
    for (const auto eliminate : {Elimination::L, Elimination::R, Elimination::U}) {
      const auto view = make_three_terminal_view(scenario, solution.report, eliminate);
      CHECK(view.pairs.size() == 3);
      CHECK(bilinear_check(solution.report, view) <=
            1e-10 * std::max(1.0, std::abs(solution.report.sigma_dot)));
    }
  }
}

TEST_CASE("equal conductor temperatures collapse one entropic bias exactly") {
  auto scenario = cqd_three_terminal(1.0, 2.0, 0.8, 0.0, lead("l", 1.4, 0.6, 1.0),
                                     lead("r", 2.0, 0.1, 1.0), lead("u", 0.7, -0.2, 1.0));
  scenario = sb_reduction(std::move(scenario));
  const auto pairs = forces_three_terminal(scenario.reservoirs, Elimination::R);
  // the l energy bias is identically zero once beta_r = beta_l
  CHECK(pairs[0].reservoir == "l");
  CHECK(pairs[0].force == 0.0);
  CHECK(pairs[1].reservoir == "u");
  CHECK(pairs[1].force == doctest::Approx(1.4 - 0.7).epsilon(1e-15));

  const auto solution = solve_scenario(scenario);
  const auto view = make_reduced_view(scenario, solution.report);
  CHECK(view.pairs.size() == 2);
  CHECK_FALSE(view.mutually_parallel);
  CHECK(bilinear_check(solution.report, view) <=
        1e-10 * std::max(1.0, std::abs(solution.report.sigma_dot)));
}

TEST_CASE("equal reference temperatures leave two l-referenced forces") {
  auto scenario = cqd_three_terminal(1.0, 2.0, 0.0, 2.0, lead("l", 1.5, 0.0, 1.0),
                                     lead("r", 2.0, -2.0, 1.0), lead("u", 2.0, 3.0, 1.0));
  scenario = icc_reduction(std::move(scenario));
  const auto solution = solve_scenario(scenario);
  const auto view = make_reduced_view(scenario, solution.report);
  CHECK(view.mutually_parallel);
  REQUIRE(view.pairs.size() == 2);
  CHECK(view.pairs[0].reservoir == "l");
  CHECK(view.pairs[1].reservoir == "l");
  CHECK(view.pairs[0].force == doctest::Approx(2.0 - 1.5).epsilon(1e-15));
  CHECK(view.pairs[1].force == doctest::Approx(1.5 * 0.0 - 2.0 * (-2.0)).epsilon(1e-15));
  CHECK(bilinear_check(solution.report, view) <=
        1e-10 * std::max(1.0, std::abs(solution.report.sigma_dot)));
}

TEST_CASE("reduced view requires a reduction, classification requires two forces") {
  const auto scenario = cqd_three_terminal(1.0, 2.0, 0.5, 0.0, lead("l", 1.0, 0.2, 1.0),
                                           lead("r", 1.5, 0.0, 1.0), lead("u", 0.8, 0.4, 1.0));
  const auto solution = solve_scenario(scenario);
  CHECK_THROWS_AS(make_reduced_view(scenario, solution.report), Error);
  const auto view = make_three_terminal_view(scenario, solution.report, Elimination::R);
  try {
    classify_regime(view);
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::UnsupportedRepresentation);
  }
}

TEST_CASE("onsager extraction on the single dot") {
  const auto scenario =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.3, 0.7), lead("r", 1.0, 0.3, 1.3));
  const auto matrix = onsager_matrix(scenario, 1e-4);
  CHECK(matrix.energy_energy > 0.0);
  CHECK(matrix.particle_particle > 0.0);
  const double scale =
      std::max({std::abs(matrix.energy_particle), std::abs(matrix.particle_energy), 1e-12});
  CHECK(matrix.reciprocity_residual() <= 1e-3 * scale);
  // J_E = eps J_N forces L_EN = eps L_NN and L_EE = eps L_NE.
  CHECK(matrix.energy_particle ==
        doctest::Approx(1.0 * matrix.particle_particle).epsilon(1e-6));
  CHECK(matrix.energy_energy == doctest::Approx(1.0 * matrix.particle_energy).epsilon(1e-6));
}

TEST_CASE("onsager extraction on the coupled dots") {
  const auto scenario = cqd_three_terminal(1.0, 2.0, 0.6, 0.0, lead("l", 1.2, 0.1, 0.9),
                                           lead("r", 1.2, 0.1, 1.1), lead("u", 1.2, 0.1, 0.7));
  const auto matrix = onsager_matrix(scenario, 1e-4);
  CHECK(matrix.direct_coefficients_positive());
  const double scale =
      std::max({std::abs(matrix.energy_particle), std::abs(matrix.particle_energy), 1e-12});
  CHECK(matrix.reciprocity_residual() <= 1e-3 * scale);
}

TEST_CASE("onsager rejects bad references and unresolvable steps") {
  const auto biased =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.4, 1.0), lead("r", 1.2, 0.3, 1.0));
  try {
    onsager_matrix(biased, 1e-4);
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::Precondition);
  }

  const auto equilibrium =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.3, 1.0), lead("r", 1.0, 0.3, 1.0));
  CHECK_THROWS_AS(onsager_matrix(equilibrium, 0.0), Error);
  try {
    onsager_matrix(equilibrium, 1e-300);
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::StepSize);
  }
}

TEST_CASE("classifier decision table") {
  const double tol = 1e-10;
  // spec'd axis examples
  CHECK(classify_regime(1.0, 5.0, 0.0, 3.0, tol, true) == RegimeLabel::SeebeckNormal);
  CHECK(classify_regime(0.0, 3.0, 1.0, 5.0, tol, true) == RegimeLabel::PeltierNormal);
  // both forces zero
  CHECK(classify_regime(0.0, 0.0, 0.0, 0.0, tol, true) == RegimeLabel::Equilibrium);
  CHECK(classify_regime(5e-11, 0.0, -5e-11, 0.0, tol, true) == RegimeLabel::Equilibrium);
  // cross current opposing the only force: the single-lead representation
  // reports an inverse precursor, the cross-referenced one an unconventional
  // thermoelectric response
  CHECK(classify_regime(1.0, 2.0, 0.0, -1.0, tol, true) == RegimeLabel::PseudoIcc);
  CHECK(classify_regime(1.0, 2.0, 0.0, -1.0, tol, false) == RegimeLabel::SeebeckUnconventional);
  CHECK(classify_regime(0.0, -1.0, 1.0, 2.0, tol, true) == RegimeLabel::PseudoIcc);
  CHECK(classify_regime(0.0, -1.0, 1.0, 2.0, tol, false) == RegimeLabel::PeltierUnconventional);
  // parallel quadrant
  CHECK(classify_regime(1.0, 2.0, 1.0, 1.0, tol, true) == RegimeLabel::ParallelDissipative);
  CHECK(classify_regime(1.0, 2.0, 1.0, -1.0, tol, true) == RegimeLabel::GenuineIcc);
  CHECK(classify_regime(1.0, -1.0, 1.0, 2.0, tol, true) == RegimeLabel::GenuineIcc);
  CHECK(classify_regime(-1.0, -2.0, -1.0, 1.0, tol, true) == RegimeLabel::GenuineIcc);
  // antiparallel quadrant: engine pumps particles against their force,
  // the refrigerator pushes energy against its force
  CHECK(classify_regime(1.0, 2.0, -1.0, 1.0, tol, true) == RegimeLabel::CrossEffectEngine);
  CHECK(classify_regime(1.0, -2.0, -1.0, -1.0, tol, true) ==
        RegimeLabel::CrossEffectRefrigerator);
  CHECK(classify_regime(1.0, 1.0, -1.0, -1.0, tol, true) == RegimeLabel::ParallelDissipative);
  // zero cross-current on an axis counts as the conventional response
  CHECK(classify_regime(1.0, 4.0, 0.0, 0.0, tol, true) == RegimeLabel::SeebeckNormal);
}

TEST_CASE("classifier is invariant under pair order") {
  ForceFluxView view;
  view.representation = "reduced_icc";
  view.mutually_parallel = true;
  view.pairs = {{"l", FluxKind::Particle, 1.0, -0.5}, {"l", FluxKind::Energy, 1.0, 2.0}};
  const auto label = classify_regime(view);
  std::swap(view.pairs[0], view.pairs[1]);
  CHECK(classify_regime(view) == label);
  CHECK(label == RegimeLabel::GenuineIcc);
}

TEST_CASE("single-dot force grid yields no inverse currents") {
  const auto base =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0));
  const auto summary = scan_icc(base, {-0.9, 0.9, 21}, {-2.0, 2.0, 21}, std::nullopt);
  CHECK(summary.points.size() == 21 * 21);
  CHECK(summary.genuine_icc.empty());
  CHECK(summary.pseudo_icc.empty());
  for (const auto& point : summary.points) CHECK(point.sigma_dot >= -1e-12);
}

TEST_CASE("repulsive coupling admits no inverse currents") {
  auto base = cqd_three_terminal(1.0, 2.0, 0.5, 0.0, lead("l", 1.5, 0.0, 1.0),
                                 lead("r", 2.0, -2.0, 1.0), lead("u", 2.0, 3.0, 1.0));
  base = icc_reduction(std::move(base));
  const auto summary = scan_icc(base, {0.06, 1.8, 12}, {0.04, 2.0, 12}, ScanAxis{0.1, 1.5, 4});
  CHECK(summary.genuine_icc.empty());
}

TEST_CASE("attractive coupling beyond the bottom level yields witnesses") {
  auto base = cqd_three_terminal(1.0, 2.0, 0.0, 2.0, lead("l", 1.5, 0.0, 1.0),
                                 lead("r", 2.0, -2.0, 1.0), lead("u", 2.0, 3.0, 1.0));
  base = icc_reduction(std::move(base));
  const auto summary = scan_icc(base, {0.06, 1.8, 12}, {0.04, 2.0, 12}, ScanAxis{-2.0, -2.0, 1});
  CHECK_FALSE(summary.genuine_icc.empty());
  for (const auto index : summary.genuine_icc) {
    const auto& point = summary.points[index];
    CHECK(point.sigma_dot > 0.0);
    CHECK(point.kappa < -1.0);
    CHECK(point.force_energy > 0.0);
    CHECK(point.force_particle > 0.0);
    // exactly one of the two currents runs against both forces
    CHECK(((point.flux_energy < 0.0) != (point.flux_particle < 0.0)));
  }
}

TEST_CASE("scan preconditions") {
  const auto unreduced = cqd_three_terminal(1.0, 2.0, 0.5, 0.0, lead("l", 1.5, 0.0, 1.0),
                                            lead("r", 2.0, -2.0, 1.0), lead("u", 1.9, 3.0, 1.0));
  try {
    scan_icc(unreduced, {0.1, 0.5, 3}, {0.1, 0.5, 3}, std::nullopt);
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::Precondition);
  }

  const auto single =
      single_qd_two_terminal(1.0, lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0));
  CHECK_THROWS_AS(scan_icc(single, {0.1, 0.5, 3}, {0.1, 0.5, 3}, ScanAxis{0.0, 1.0, 2}), Error);
  // force grid reaching the reference temperature is rejected up front
  CHECK_THROWS_AS(scan_icc(single, {0.5, 1.0, 3}, {0.1, 0.5, 3}, std::nullopt), Error);
  // degenerate axis
  CHECK_THROWS_AS(scan_icc(single, {0.1, 0.1, 3}, {0.1, 0.5, 3}, std::nullopt), Error);
}

}  // TEST_SUITE
