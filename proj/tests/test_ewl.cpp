#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qgess/ewl.hpp"

using namespace qgess;

namespace {

constexpr double kPi = std::numbers::pi;

Bimatrix2 coordination_game() { return Bimatrix2::from_roles({2, 0, 0, 2}); }

}  // namespace

TEST_CASE("entangler endpoints and commutation") {
  CHECK(max_abs(entangler(0.0).matrix() - CMatrix::Identity(4, 4)) < 1e-15);
  const StateVector out = apply(entangler(kPi / 2), StateVector::basis(4, 0));
  const double h = 1.0 / std::sqrt(2.0);
  CHECK(std::abs(out.amplitude(0) - Complex(h, 0)) < 1e-15);
  CHECK(std::abs(out.amplitude(3) - Complex(0, h)) < 1e-15);
  CMatrix d(2, 2);
  d << 0, 1, -1, 0;
  const CMatrix dd = tensor(d, d);
  for (double g : {0.0, 0.3, 1.0, kPi / 2}) {
    CHECK(max_abs(commutator(entangler(g).matrix(), dd)) < 1e-10);
  }
}

TEST_CASE("Prisoner's Dilemma payoffs at maximal entanglement") {
  const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), kPi / 2);
  const EWLStrategy q = EWLStrategy::q_hat(), d = EWLStrategy::defect();
  auto near = [](std::pair<double, double> got, double a, double b) {
    return std::abs(got.first - a) < 1e-9 && std::abs(got.second - b) < 1e-9;
  };
  CHECK(near(ewl_payoffs(cfg, q, q), 3, 3));
  CHECK(near(ewl_payoffs(cfg, d, d), 1, 1));
  CHECK(near(ewl_payoffs(cfg, q, d), 5, 0));
  CHECK(near(ewl_payoffs(cfg, d, q), 0, 5));
  CHECK(near(ewl_payoffs(cfg, EWLStrategy::cooperate(), EWLStrategy::cooperate()), 3, 3));
}

TEST_CASE("simulator matches the independent state-vector oracle") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, kPi / 2);
  for (int k = 0; k < 2000; ++k) {
    const double ta = th(rng), pa = ph(rng), tb = th(rng), pb = ph(rng), g = ph(rng);
    const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), g);
    const auto got = ewl_payoffs(cfg, EWLStrategy(ta, pa), EWLStrategy(tb, pb));
    const auto want = oracle::ewl_pay(3, 0, 5, 1, ta, pa, tb, pb, g);
    CHECK(std::abs(got.first - want.first) < 1e-12);
    CHECK(std::abs(got.second - want.second) < 1e-12);
    const auto pr = ewl_probabilities(cfg, EWLStrategy(ta, pa), EWLStrategy(tb, pb));
    CHECK(std::abs(pr[0] + pr[1] + pr[2] + pr[3] - 1.0) < 1e-12);
  }
}

TEST_CASE("symmetric game gives P_A(sA,sB) = P_B(sB,sA)") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, kPi / 2);
  for (int k = 0; k < 1000; ++k) {
    const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), ph(rng));
    const EWLStrategy a(th(rng), ph(rng)), b(th(rng), ph(rng));
    CHECK(std::abs(ewl_payoffs(cfg, a, b).first - ewl_payoffs(cfg, b, a).second) < 1e-12);
  }
}

TEST_CASE("zero entanglement reproduces the classical mixed game") {
  const Bimatrix2 g = Bimatrix2::prisoners_dilemma();
  const EWLConfig cfg(g, 0.0);
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; j <= 20; ++j) {
      const double ta = kPi * i / 20, tb = kPi * j / 20;
      const auto got =
          ewl_payoffs(cfg, EWLStrategy::one_parameter(ta), EWLStrategy::one_parameter(tb));
      const double p = std::pow(std::cos(ta / 2), 2), q = std::pow(std::cos(tb / 2), 2);
      const auto want = mixed_payoff_bimatrix(g, MixedStrategy1(std::min(p, 1.0)),
                                              MixedStrategy1(std::min(q, 1.0)));
      CHECK(std::abs(got.first - want.first) < 1e-12);
      CHECK(std::abs(got.second - want.second) < 1e-12);
    }
  }
}

TEST_CASE("one-parameter strategy against D at maximal entanglement") {
  const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), kPi / 2);
  for (int i = 0; i <= 100; ++i) {
    const double theta = kPi * i / 100;
    const double got =
        ewl_payoffs(cfg, EWLStrategy::one_parameter(theta), EWLStrategy::defect()).first;
    CHECK(std::abs(got - std::pow(std::sin(theta / 2), 2)) < 1e-9);
  }
}

TEST_CASE("closed form agrees with the simulator on the full grid") {
  const EWLConfig base(coordination_game(), 0.0);
  REQUIRE(ewl_closed_form_applies(base.roles()));
  double worst = 0.0;
  for (int gi = 0; gi <= 10; ++gi) {
    const EWLConfig cfg(coordination_game(), (kPi / 2) * gi / 10);
    for (int a = 0; a <= 20; ++a) {
      for (int b = 0; b <= 20; ++b) {
        const EWLStrategy sa(kPi * a / 20, (kPi / 2) * b / 20);
        for (int c = 0; c <= 20; ++c) {
          for (int d = 0; d <= 20; ++d) {
            const EWLStrategy sb(kPi * c / 20, (kPi / 2) * d / 20);
            worst = std::max(worst, std::abs(ewl_payoffs(cfg, sa, sb).first -
                                             ewl_symmetric_payoff_closed(cfg, sa, sb)));
          }
        }
      }
    }
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("closed-form reference values") {
  const EWLStrategy star(kPi / 2, kPi / 4);
  CHECK(ewl_symmetric_payoff_closed(EWLConfig(coordination_game(), 0.0), star, star) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(ewl_symmetric_payoff_closed(EWLConfig(coordination_game(), kPi / 2), star, star) ==
        doctest::Approx(2.0).epsilon(1e-12));
  const EWLStrategy c = EWLStrategy::cooperate();
  CHECK(ewl_symmetric_payoff_closed(EWLConfig(coordination_game(), 0.7), c, c) ==
        doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("s* remains a NE for every entanglement level") {
  const EWLStrategy star(kPi / 2, kPi / 4);
  for (int gi = 0; gi <= 10; ++gi) {
    const EWLConfig cfg(coordination_game(), (kPi / 2) * gi / 10);
    const double home = ewl_payoffs(cfg, star, star).first;
    double worst = 1e9;
    for (int a = 0; a <= 40; ++a) {
      for (int b = 0; b <= 20; ++b) {
        const EWLStrategy m(kPi * a / 40, (kPi / 2) * b / 20);
        worst = std::min(worst, home - ewl_payoffs(cfg, m, star).first);
      }
    }
    CHECK(worst >= -1e-9);
  }
}

TEST_CASE("Q phase is honoured at payoff level") {
  const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), kPi / 2);
  const oracle::Mat q_diag = {{oracle::C(0, 1), 0.0}, {0.0, oracle::C(0, -1)}};
  const oracle::Mat j = oracle::ewl_j(kPi / 2);
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> th(0.0, kPi), ph(0.0, kPi / 2);
  for (int k = 0; k < 100; ++k) {
    const double t = th(rng), p = ph(rng);
    const oracle::Mat u = oracle::kron(q_diag, oracle::ewl_u(t, p));
    const oracle::Vec psi =
        oracle::mul(oracle::mul(oracle::dagger(j), oracle::mul(u, j)), oracle::Vec{1.0, 0, 0, 0});
    const double want = 3 * std::norm(psi[0]) + 5 * std::norm(psi[2]) + std::norm(psi[3]);
    CHECK(std::abs(ewl_payoffs(cfg, EWLStrategy::q_hat(), EWLStrategy(t, p)).first - want) < 1e-12);
  }
}

TEST_CASE("range and constraint errors") {
  CHECK_THROWS_AS(EWLStrategy(-0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EWLStrategy(kPi + 0.1, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(EWLStrategy(0.0, kPi / 2 + 0.1), std::invalid_argument);
  CHECK_NOTHROW(EWLStrategy(kPi + 1e-13, kPi / 2 + 1e-13));
  CHECK_THROWS_AS(EWLConfig(Bimatrix2::prisoners_dilemma(), 2.0), std::invalid_argument);
  CHECK_THROWS_AS(EWLConfig(Bimatrix2::battle_of_sexes(3, 2, 1), 0.5), std::invalid_argument);
  CHECK_THROWS_AS(entangler(-0.5), std::invalid_argument);
  const EWLConfig pd(Bimatrix2::prisoners_dilemma(), 0.5);
  CHECK_THROWS_AS(ewl_symmetric_payoff_closed(pd, EWLStrategy::cooperate(), EWLStrategy::defect()),
                  std::domain_error);
}
