#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "qgess/games.hpp"
#include "qgess/stability.hpp"

using namespace qgess;

namespace {

double general_pa(const PdRoles& g, double p, double q) {
  return g.r * p * q + g.s * p * (1 - q) + g.t * (1 - p) * q + g.u * (1 - p) * (1 - q);
}

Bimatrix2 bimatrix(Cell a, Cell b, Cell c, Cell d) {
  return Bimatrix2(Bimatrix2::Cells{{{a, b}, {c, d}}});
}

std::vector<Bimatrix2> sample_games() {
  return {Bimatrix2::prisoners_dilemma(),
          Bimatrix2::battle_of_sexes(3, 2, 1),
          Bimatrix2::symmetric(1, 0, 2, 3),
          Bimatrix2::symmetric(2, 0, 0, 2),
          bimatrix({1, 1}, {1, 2}, {2, 1}, {3, 2}),
          bimatrix({2, 1}, {1, 0}, {1, 0}, {1, 0}),
          bimatrix({0, 0}, {-1, 1}, {1, -1}, {0, 0})};
}

}  // namespace

TEST_CASE("mixed strategies are range-checked and snapped") {
  CHECK_THROWS_AS(MixedStrategy1(-0.01), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy1(1.01), std::invalid_argument);
  CHECK(MixedStrategy1(1.0 + 1e-13).p() == 1.0);
  CHECK_THROWS_AS(MixedStrategy2(0.6, 0.6), std::invalid_argument);
  CHECK_THROWS_AS(MixedStrategy2(-0.1, 0.2), std::invalid_argument);
  const MixedStrategy2 m(0.2, 0.3);
  CHECK(m.rest() == doctest::Approx(0.5));
}

TEST_CASE("payoffs follow the bilinear formula") {
  const PdRoles roles{3, 0, 5, 1};
  const Bimatrix2 g = Bimatrix2::from_roles(roles);
  for (int i = 0; i <= 10; ++i) {
    for (int j = 0; j <= 10; ++j) {
      const double p = i / 10.0, q = j / 10.0;
      const auto [a, b] = mixed_payoff_bimatrix(g, MixedStrategy1(p), MixedStrategy1(q));
      CHECK(a == doctest::Approx(general_pa(roles, p, q)).epsilon(1e-14));
      CHECK(b == doctest::Approx(general_pa(roles, q, p)).epsilon(1e-14));
    }
  }
}

TEST_CASE("payoff bilinearity in each argument") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const Bimatrix2& g : sample_games()) {
    for (int k = 0; k < 200; ++k) {
      const double p = u(rng), p2 = u(rng), q = u(rng), lam = u(rng);
      auto pa = [&](double x, double y) {
        return mixed_payoff_bimatrix(g, MixedStrategy1(x), MixedStrategy1(y));
      };
      const auto mix = pa(lam * p + (1 - lam) * p2, q);
      const auto lo = pa(p, q), hi = pa(p2, q);
      CHECK(std::abs(mix.first - (lam * lo.first + (1 - lam) * hi.first)) < 1e-12);
      CHECK(std::abs(mix.second - (lam * lo.second + (1 - lam) * hi.second)) < 1e-12);
      const auto mixq = pa(q, lam * p + (1 - lam) * p2);
      CHECK(std::abs(mixq.first - (lam * pa(q, p).first + (1 - lam) * pa(q, p2).first)) < 1e-12);
    }
  }
}

TEST_CASE("symmetric games satisfy P_A(p,q) = P_B(q,p)") {
  for (const Bimatrix2& g : sample_games()) {
    if (!g.is_symmetric()) continue;
    for (int i = 0; i <= 20; ++i) {
      for (int j = 0; j <= 20; ++j) {
        const MixedStrategy1 p(i / 20.0), q(j / 20.0);
        CHECK(std::abs(mixed_payoff_bimatrix(g, p, q).first -
                       mixed_payoff_bimatrix(g, q, p).second) < 1e-12);
      }
    }
  }
}

TEST_CASE("factories and role detection") {
  CHECK(Bimatrix2::prisoners_dilemma().is_symmetric());
  CHECK_FALSE(Bimatrix2::battle_of_sexes(3, 2, 1).is_symmetric());
  const auto roles = Bimatrix2::prisoners_dilemma().pd_roles();
  REQUIRE(roles);
  CHECK(roles->r == 3);
  CHECK(roles->s == 0);
  CHECK(roles->t == 5);
  CHECK(roles->u == 1);
  CHECK_FALSE(Bimatrix2::battle_of_sexes(3, 2, 1).pd_roles());
  const Bimatrix2 s = Bimatrix2::symmetric(1, 0, 2, 3);
  CHECK(s.cell(0, 1) == Cell{0, 2});
  CHECK(s.cell(1, 0) == Cell{2, 0});
  CHECK_THROWS_AS(bimatrix({1, std::nan("")}, {0, 0}, {0, 0}, {0, 0}),
                  std::invalid_argument);
}

TEST_CASE("classical Battle of the Sexes equilibria") {
  const ClassicalEquilibria eq = classical_equilibria_2x2(Bimatrix2::battle_of_sexes(3, 2, 1));
  REQUIRE(eq.equilibria.size() == 3);
  CHECK_FALSE(eq.degenerate);
  int found = 0;
  for (const ClassicalEquilibrium& e : eq.equilibria) {
    CHECK(e.grid_verified);
    if (e.interior) {
      CHECK(e.p == doctest::Approx(2.0 / 3).epsilon(1e-12));
      CHECK(e.q == doctest::Approx(1.0 / 3).epsilon(1e-12));
      ++found;
    } else {
      CHECK(e.p == e.q);
      ++found;
    }
  }
  CHECK(found == 3);
}

TEST_CASE("every returned NE passes the asymmetric NE check") {
  for (const Bimatrix2& g : sample_games()) {
    const ClassicalEquilibria eq = classical_equilibria_2x2(g);
    for (const ClassicalEquilibrium& e : eq.equilibria) {
      auto fa = [&](double p, double q) {
        return mixed_payoff_bimatrix(g, MixedStrategy1(p), MixedStrategy1(q)).first;
      };
      auto fb = [&](double p, double q) {
        return mixed_payoff_bimatrix(g, MixedStrategy1(p), MixedStrategy1(q)).second;
      };
      const AsymmetricReport r = check_asymmetric_ess(fa, fb, {e.p, e.q});
      CHECK(r.is_ne);
      CHECK(classical_ne_gap(g, e.p, e.q, 1e-3) >= -1e-9);
    }
  }
}

TEST_CASE("matching pennies has only the interior equilibrium") {
  const Bimatrix2 g = bimatrix({1, -1}, {-1, 1}, {-1, 1}, {1, -1});
  const ClassicalEquilibria eq = classical_equilibria_2x2(g);
  REQUIRE(eq.equilibria.size() == 1);
  CHECK(eq.equilibria[0].interior);
  CHECK(eq.equilibria[0].p == doctest::Approx(0.5));
  CHECK(eq.equilibria[0].q == doctest::Approx(0.5));
}

TEST_CASE("degenerate games return pure candidates and flag degeneracy") {
  const Bimatrix2 flat = bimatrix({1, 1}, {1, 1}, {1, 1}, {1, 1});
  const ClassicalEquilibria eq = classical_equilibria_2x2(flat);
  CHECK(eq.degenerate);
  CHECK(eq.equilibria.size() == 4);
  for (const ClassicalEquilibrium& e : eq.equilibria) CHECK_FALSE(e.interior);
}

TEST_CASE("Rock-Scissors-Paper matrix") {
  const Matrix3x3Pair g = Matrix3x3Pair::rock_scissors_paper(-0.5);
  CHECK(g.is_symmetric());
  CHECK(g.is_finite());
  for (int i = 0; i < 3; ++i) CHECK(g.alpha[i][i] == 0.5);
  CHECK(g.alpha[0][1] == 1);
  CHECK(g.alpha[1][0] == -1);
  CHECK(g.alpha[0][2] == -1);
  const std::array<double, 3> third = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  const auto [a, b] = classical_payoff_3x3(g, third, third);
  CHECK(a == doctest::Approx(0.5 / 3));
  CHECK(b == doctest::Approx(0.5 / 3));
}

TEST_CASE("three-player spec entries follow anonymity") {
  ThreePlayerSymmetricSpec s;
  s.alpha1 = 1;
  s.alpha2 = 2;
  s.alpha3 = 3;
  s.alpha5 = 5;
  s.alpha6 = 6;
  s.alpha8 = 8;
  CHECK(s.payoff(0, 0, 0) == 1);
  CHECK(s.payoff(1, 0, 0) == 2);
  CHECK(s.payoff(0, 1, 0) == 3);
  CHECK(s.payoff(0, 0, 1) == 3);
  CHECK(s.payoff(0, 1, 1) == 5);
  CHECK(s.payoff(1, 0, 1) == 6);
  CHECK(s.payoff(1, 1, 0) == 6);
  CHECK(s.payoff(1, 1, 1) == 8);
  CHECK(s.sigma() == -1);
  CHECK(s.eta() == -3);
  CHECK(s.omega() == -3);
}
