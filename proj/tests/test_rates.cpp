#include <doctest.h>

#include <cmath>
#include <random>

#include "qdt/errors.hpp"
#include "qdt/rates.hpp"

using namespace qdt;

namespace {

ReservoirSpec lead(const std::string& id, double beta, double mu, double gamma,
                   Spin spin = Spin::Unpolarized) {
  return ReservoirSpec(id, beta, mu, gamma, spin);
}

SystemSpec cqd_system(double eb, double eu, double kc, double ks) {
  return SystemSpec({DotSpec(DotLabel::Bottom, eb), DotSpec(DotLabel::Upper, eu)}, kc, ks,
                    {{DotLabel::Bottom, "l"}, {DotLabel::Bottom, "r"}, {DotLabel::Upper, "u"}});
}

}  // namespace

TEST_SUITE("rates") {

TEST_CASE("fermi factors at the chemical potential") {
  CHECK(fermi_plus(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fermi_plus(5.0, 2.0, 2.0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(fermi_minus(1.0, 0.0, 0.0) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("fermi factor closed form") {
  // 1 / (1 + 3) and its complement
  CHECK(fermi_plus(1.0, 0.0, std::log(3.0)) == doctest::Approx(0.25).epsilon(1e-14));
  CHECK(fermi_minus(1.0, 0.0, std::log(3.0)) == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("fermi overflow clamps to exact 0 and 1") {
  CHECK(fermi_plus(1.0, 0.0, 1e4) == 0.0);
  CHECK(fermi_plus(1.0, 0.0, -1e4) == 1.0);
  CHECK(fermi_plus(1e6, 0.0, 1.0) == 0.0);
  CHECK(fermi_minus(1.0, 0.0, 1e4) == 1.0);
  CHECK(fermi_minus(1e6, 0.0, -1.0) == 0.0);
}

TEST_CASE("fermi rejects non-positive beta") {
  CHECK_THROWS_AS(fermi_plus(0.0, 0.0, 1.0), Error);
  CHECK_THROWS_AS(fermi_plus(-1.0, 0.0, 1.0), Error);
  try {
    fermi_plus(-1.0, 0.0, 1.0);
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::InvalidParameter);
  }
}

TEST_CASE("fermi complement and bounds over random inputs") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> beta_draw(0.05, 20.0);
  std::uniform_real_distribution<double> value_draw(-10.0, 10.0);
  for (int i = 0; i < 5000; ++i) {
    const double beta = beta_draw(rng);
    const double mu = value_draw(rng);
    const double omega = value_draw(rng);
    const double plus = fermi_plus(beta, mu, omega);
    const double minus = fermi_minus(beta, mu, omega);
    CHECK(plus >= 0.0);
    CHECK(plus <= 1.0);
    // exact complement up to one ulp
    CHECK(std::abs(plus + minus - 1.0) <= 1e-16);
  }
}

TEST_CASE("fermi monotone decreasing in omega, increasing in mu") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> draw(-8.0, 8.0);
  std::uniform_real_distribution<double> beta_draw(0.1, 10.0);
  for (int i = 0; i < 2000; ++i) {
    const double beta = beta_draw(rng);
    const double mu = draw(rng);
    double a = draw(rng), b = draw(rng);
    if (a > b) std::swap(a, b);
    CHECK(fermi_plus(beta, mu, a) >= fermi_plus(beta, mu, b));
    double m1 = draw(rng), m2 = draw(rng);
    if (m1 > m2) std::swap(m1, m2);
    const double omega = draw(rng);
    CHECK(fermi_plus(beta, m1, omega) <= fermi_plus(beta, m2, omega));
  }
}

TEST_CASE("single-dot eigenbasis") {
  const SystemSpec system({DotSpec(DotLabel::Single, 1.0)}, 0.0, 0.0,
                          {{DotLabel::Single, "l"}, {DotLabel::Single, "r"}});
  const auto basis = build_eigenbasis(system);
  REQUIRE(basis.size() == 2);
  CHECK(basis[0].label == 'A');
  CHECK(basis[0].energy == 0.0);
  CHECK(basis[1].label == 'B');
  CHECK(basis[1].energy == 1.0);
  CHECK(basis[0].total_occupation() == 0);
  CHECK(basis[1].total_occupation() == 1);
}

TEST_CASE("coupled-dot eigenbasis energies") {
  const auto basis = build_eigenbasis(cqd_system(1.0, 2.0, 0.5, 0.0));
  REQUIRE(basis.size() == 4);
  CHECK(basis[0].energy == 0.0);
  CHECK(basis[1].energy == 1.0);
  CHECK(basis[2].energy == 2.0);
  CHECK(basis[3].energy == 3.5);
}

TEST_CASE("attractive coupling inverts the C/D level order") {
  const auto basis = build_eigenbasis(cqd_system(1.0, 2.0, 0.0, 2.5));
  CHECK(basis[0].energy == 0.0);
  CHECK(basis[1].energy == 1.0);
  CHECK(basis[2].energy == 2.0);
  CHECK(basis[3].energy == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(basis[3].energy < basis[2].energy);
}

TEST_CASE("single-dot graph has four directed transitions") {
  const SystemSpec system({DotSpec(DotLabel::Single, 1.0)}, 0.0, 0.0,
                          {{DotLabel::Single, "l"}, {DotLabel::Single, "r"}});
  const auto graph =
      build_transition_graph(system, {lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0)});
  CHECK(graph.transitions.size() == 4);
  int excitations = 0;
  for (const auto& t : graph.transitions) {
    if (t.direction == Direction::Excitation) {
      ++excitations;
      CHECK(t.from == 0);
      CHECK(t.to == 1);
      CHECK(t.omega == 1.0);
    } else {
      CHECK(t.from == 1);
      CHECK(t.to == 0);
      CHECK(t.omega == -1.0);
    }
  }
  CHECK(excitations == 2);
}

TEST_CASE("coupled-dot graph: twelve transitions, blockaded pairs absent") {
  const auto system = cqd_system(1.0, 2.0, 0.5, 0.0);
  const auto graph = build_transition_graph(
      system, {lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0), lead("u", 1.0, 0.0, 1.0)});
  CHECK(graph.transitions.size() == 12);
  for (const auto& t : graph.transitions) {
    const bool b_to_c = (t.from == 1 && t.to == 2) || (t.from == 2 && t.to == 1);
    const bool a_to_d = (t.from == 0 && t.to == 3) || (t.from == 3 && t.to == 0);
    CHECK_FALSE(b_to_c);
    CHECK_FALSE(a_to_d);
    if (t.dot == DotLabel::Bottom) CHECK((t.reservoir == "l" || t.reservoir == "r"));
    if (t.dot == DotLabel::Upper) CHECK(t.reservoir == "u");
  }
}

TEST_CASE("removing the upper lead freezes the upper dot") {
  const SystemSpec system({DotSpec(DotLabel::Bottom, 1.0), DotSpec(DotLabel::Upper, 2.0)}, 0.5,
                          0.0, {{DotLabel::Bottom, "l"}, {DotLabel::Bottom, "r"}});
  const auto graph =
      build_transition_graph(system, {lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0)});
  CHECK(graph.transitions.size() == 8);
  for (const auto& t : graph.transitions) {
    const bool a_to_c = (t.from == 0 && t.to == 2) || (t.from == 2 && t.to == 0);
    const bool b_to_d = (t.from == 1 && t.to == 3) || (t.from == 3 && t.to == 1);
    CHECK_FALSE(a_to_c);
    CHECK_FALSE(b_to_d);
  }
}

TEST_CASE("graph symmetry: every excitation has its reverse with omega negated") {
  const auto system = cqd_system(1.0, 2.0, 0.2, 1.5);
  const auto graph = build_transition_graph(
      system, {lead("l", 1.0, 0.0, 1.0), lead("r", 2.0, 0.5, 0.5), lead("u", 0.5, -0.5, 1.5)});
  for (const auto& t : graph.transitions) {
    if (t.direction != Direction::Excitation) continue;
    bool matched = false;
    for (const auto& reverse : graph.transitions) {
      if (reverse.direction == Direction::Deexcitation && reverse.from == t.to &&
          reverse.to == t.from && reverse.reservoir == t.reservoir && reverse.omega == -t.omega) {
        matched = true;
      }
    }
    CHECK(matched);
  }
}

TEST_CASE("graph rejects unknown reservoirs and spin mismatches") {
  const auto system = cqd_system(1.0, 2.0, 0.2, 1.5);
  CHECK_THROWS_AS(build_transition_graph(system, {lead("l", 1.0, 0.0, 1.0)}), Error);

  SystemSpec polarized({DotSpec(DotLabel::Bottom, 1.0, Spin::Down),
                        DotSpec(DotLabel::Upper, 2.0, Spin::Up)},
                       0.0, 1.5,
                       {{DotLabel::Bottom, "l"}, {DotLabel::Bottom, "r"}, {DotLabel::Upper, "u"}});
  try {
    build_transition_graph(polarized,
                           {lead("l", 1.0, 0.0, 1.0, Spin::Up), lead("r", 1.0, 0.0, 1.0, Spin::Down),
                            lead("u", 1.0, 0.0, 1.0, Spin::Up)});
    CHECK(false);
  } catch (const Error& error) {
    CHECK(error.kind() == ErrorKind::Configuration);
    CHECK(std::string(error.what()).find("spin mismatch") != std::string::npos);
  }
}

TEST_CASE("rate matrix columns sum to zero, off-diagonals non-negative") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> beta_draw(0.1, 10.0);
  std::uniform_real_distribution<double> mu_draw(-5.0, 5.0);
  std::uniform_real_distribution<double> gamma_draw(0.01, 2.0);
  std::uniform_real_distribution<double> eps_draw(0.1, 5.0);
  std::uniform_real_distribution<double> kappa_draw(0.0, 3.0);
  for (int i = 0; i < 300; ++i) {
    const auto system = cqd_system(eps_draw(rng), eps_draw(rng), kappa_draw(rng), kappa_draw(rng));
    const std::vector<ReservoirSpec> leads{
        lead("l", beta_draw(rng), mu_draw(rng), gamma_draw(rng)),
        lead("r", beta_draw(rng), mu_draw(rng), gamma_draw(rng)),
        lead("u", beta_draw(rng), mu_draw(rng), gamma_draw(rng))};
    const auto rates = build_rate_matrix(build_transition_graph(system, leads), leads);
    for (Eigen::Index c = 0; c < 4; ++c) {
      CHECK(std::abs(rates.generator.col(c).sum()) <= 1e-14);
      for (Eigen::Index r = 0; r < 4; ++r) {
        if (r != c) CHECK(rates.generator(r, c) >= 0.0);
      }
    }
  }
}

TEST_CASE("detailed balance per channel") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> beta_draw(0.3, 3.0);
  std::uniform_real_distribution<double> mu_draw(-2.0, 2.0);
  std::uniform_real_distribution<double> gam_draw(0.2, 2.0);
  for (int i = 0; i < 200; ++i) {
    const auto system = cqd_system(1.0 + i * 0.001, 2.0, 0.4, 0.0);
    const std::vector<ReservoirSpec> leads{lead("l", beta_draw(rng), mu_draw(rng), gam_draw(rng)),
                                           lead("r", beta_draw(rng), mu_draw(rng), gam_draw(rng)),
                                           lead("u", beta_draw(rng), mu_draw(rng), gam_draw(rng))};
    const auto graph = build_transition_graph(system, leads);
    const auto rates = build_rate_matrix(graph, leads);
    for (const auto& channel : rates.channels) {
      if (channel.transition.direction != Direction::Excitation) continue;
      const RateChannel* reverse = nullptr;
      for (const auto& other : rates.channels) {
        if (other.transition.from == channel.transition.to &&
            other.transition.to == channel.transition.from &&
            other.transition.reservoir == channel.transition.reservoir)
          reverse = &other;
      }
      REQUIRE(reverse != nullptr);
      const ReservoirSpec* bath = nullptr;
      for (const auto& candidate : leads)
        if (candidate.id == channel.transition.reservoir) bath = &candidate;
      REQUIRE(bath != nullptr);
      const double expected = std::exp(-bath->beta * (channel.transition.omega - bath->mu));
      CHECK(channel.rate / reverse->rate == doctest::Approx(expected).epsilon(1e-12));
    }
  }
}

TEST_CASE("two identical leads act as one lead with summed gamma") {
  const SystemSpec system({DotSpec(DotLabel::Single, 1.0)}, 0.0, 0.0,
                          {{DotLabel::Single, "l"}, {DotLabel::Single, "r"}});
  const std::vector<ReservoirSpec> pair{lead("l", 1.3, 0.4, 0.7), lead("r", 1.3, 0.4, 0.5)};
  const auto two = build_rate_matrix(build_transition_graph(system, pair), pair);

  const SystemSpec merged_system({DotSpec(DotLabel::Single, 1.0)}, 0.0, 0.0,
                                 {{DotLabel::Single, "m"}});
  const std::vector<ReservoirSpec> merged{lead("m", 1.3, 0.4, 1.2)};
  const auto one = build_rate_matrix(build_transition_graph(merged_system, merged), merged);
  CHECK((two.generator - one.generator).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("coupled-dot generator matches independently evaluated fermi products") {
  // eps_b = 1, eps_u = 2, kappa = 0.5; all leads beta = 1, mu = 0, gamma = 1.
  const auto system = cqd_system(1.0, 2.0, 0.5, 0.0);
  const std::vector<ReservoirSpec> leads{lead("l", 1.0, 0.0, 1.0), lead("r", 1.0, 0.0, 1.0),
                                         lead("u", 1.0, 0.0, 1.0)};
  const auto rates = build_rate_matrix(build_transition_graph(system, leads), leads);

  // Scalar re-derivation, kept separate from the library path.
  const auto occupation = [](double omega) { return 1.0 / (1.0 + std::exp(omega)); };
  const double w_ab = 1.0, w_cd = 1.5, w_ac = 2.0, w_bd = 2.5;
  Eigen::MatrixXd expected = Eigen::MatrixXd::Zero(4, 4);
  expected(1, 0) += 2.0 * occupation(w_ab);          // A->B via l and r
  expected(0, 1) += 2.0 * (1.0 - occupation(w_ab));  // B->A
  expected(3, 2) += 2.0 * occupation(w_cd);          // C->D via l and r
  expected(2, 3) += 2.0 * (1.0 - occupation(w_cd));  // D->C
  expected(2, 0) += occupation(w_ac);                // A->C via u
  expected(0, 2) += 1.0 - occupation(w_ac);          // C->A
  expected(3, 1) += occupation(w_bd);                // B->D via u
  expected(1, 3) += 1.0 - occupation(w_bd);          // D->B
  for (int c = 0; c < 4; ++c) {
    expected(c, c) = 0.0;
    expected(c, c) = -expected.col(c).sum();
  }
  CHECK((rates.generator - expected).cwiseAbs().maxCoeff() <= 1e-15);
}

TEST_CASE("zero-temperature filled lead drives the dot full") {
  const SystemSpec system({DotSpec(DotLabel::Single, 1.0)}, 0.0, 0.0, {{DotLabel::Single, "l"}});
  const std::vector<ReservoirSpec> leads{lead("l", 1e6, 2.0, 1.0)};
  const auto rates = build_rate_matrix(build_transition_graph(system, leads), leads);
  CHECK(rates.generator(1, 0) == 1.0);  // excitation at gamma * 1
  CHECK(rates.generator(0, 1) == 0.0);  // de-excitation suppressed
}

}  // TEST_SUITE
