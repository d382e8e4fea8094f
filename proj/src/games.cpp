#include "qgess/games.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgess {

namespace {

constexpr double kProbTol = 1e-12;
constexpr double kDegenerateTol = 1e-9;
constexpr double kNeTol = 1e-9;
constexpr double kVerifyStep = 1e-3;

double snap_probability(double p) {
  // Rounding in 1 - p - p1 and friends lands a few ulps outside [0, 1].
  if (p < 0.0 && p > -kProbTol) return 0.0;
  if (p > 1.0 && p < 1.0 + kProbTol) return 1.0;
  return p;
}

double alice(const Bimatrix2& g, double p, double q) {
  return g.row_payoff(0, 0) * p * q + g.row_payoff(0, 1) * p * (1 - q) +
         g.row_payoff(1, 0) * (1 - p) * q + g.row_payoff(1, 1) * (1 - p) * (1 - q);
}

double bob(const Bimatrix2& g, double p, double q) {
  return g.col_payoff(0, 0) * p * q + g.col_payoff(0, 1) * p * (1 - q) +
         g.col_payoff(1, 0) * (1 - p) * q + g.col_payoff(1, 1) * (1 - p) * (1 - q);
}

}  // namespace

MixedStrategy1::MixedStrategy1(double p) : p_(snap_probability(p)) {
  if (!(p_ >= 0.0 && p_ <= 1.0)) {
    throw std::invalid_argument("MixedStrategy1: probability outside [0, 1]");
  }
}

MixedStrategy2::MixedStrategy2(double p, double p1)
    : p_(snap_probability(p)), p1_(snap_probability(p1)) {
  if (!(p_ >= 0.0 && p1_ >= 0.0 && p_ + p1_ <= 1.0 + kProbTol)) {
    throw std::invalid_argument("MixedStrategy2: need p, p1 >= 0 and p + p1 <= 1");
  }
}

Bimatrix2::Bimatrix2(const Cells& cells) : cells_(cells) {
  for (const auto& row : cells_) {
    for (const Cell& c : row) {
      if (!std::isfinite(c.row) || !std::isfinite(c.col)) {
        throw std::invalid_argument("Bimatrix2: payoffs must be finite");
      }
    }
  }
}

Bimatrix2 Bimatrix2::from_roles(const PdRoles& x) {
  return Bimatrix2(Cells{{{{{x.r, x.r}, {x.s, x.t}}}, {{{x.t, x.s}, {x.u, x.u}}}}});
}

Bimatrix2 Bimatrix2::symmetric(double alpha, double beta, double gamma, double delta) {
  return Bimatrix2(
      Cells{{{{{alpha, alpha}, {beta, gamma}}}, {{{gamma, beta}, {delta, delta}}}}});
}

Bimatrix2 Bimatrix2::battle_of_sexes(double alpha, double beta, double gamma) {
  return Bimatrix2(
      Cells{{{{{alpha, beta}, {gamma, gamma}}}, {{{gamma, gamma}, {beta, alpha}}}}});
}

bool Bimatrix2::is_symmetric() const {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (col_payoff(i, j) != row_payoff(j, i)) return false;
    }
  }
  return true;
}

std::optional<PdRoles> Bimatrix2::pd_roles() const {
  const PdRoles x{row_payoff(0, 0), row_payoff(0, 1), row_payoff(1, 0), row_payoff(1, 1)};
  if (*this == Bimatrix2::from_roles(x)) return x;
  return std::nullopt;
}

std::pair<double, double> mixed_payoff_bimatrix(const Bimatrix2& g, MixedStrategy1 p,
                                                MixedStrategy1 q) {
  return {alice(g, p.p(), q.p()), bob(g, p.p(), q.p())};
}

double classical_ne_gap(const Bimatrix2& g, double p, double q, double grid_step) {
  const int n = static_cast<int>(std::lround(1.0 / grid_step));
  double gap = 0.0;
  const double pa = alice(g, p, q);
  const double pb = bob(g, p, q);
  for (int k = 0; k <= n; ++k) {
    const double x = static_cast<double>(k) / n;
    gap = std::min(gap, pa - alice(g, x, q));
    gap = std::min(gap, pb - bob(g, p, x));
  }
  return gap;
}

ClassicalEquilibria classical_equilibria_2x2(const Bimatrix2& g) {
  ClassicalEquilibria out;
  // Pure profiles, listed in a fixed order: (0,0), (0,1), (1,0), (1,1).
  for (int pi = 0; pi < 2; ++pi) {
    for (int qi = 0; qi < 2; ++qi) {
      const double p = pi, q = qi;
      const int i = 1 - pi, j = 1 - qi;  // pure index of p=1 is S1 (index 0)
      const bool alice_best = g.row_payoff(i, j) >= g.row_payoff(1 - i, j) - kNeTol;
      const bool bob_best = g.col_payoff(i, j) >= g.col_payoff(i, 1 - j) - kNeTol;
      if (alice_best && bob_best) {
        out.equilibria.push_back({p, q, false, false});
      }
    }
  }
  // Alice is indifferent at q*, Bob at p*.
  const double alice_den = g.row_payoff(0, 0) - g.row_payoff(1, 0) - g.row_payoff(0, 1) +
                           g.row_payoff(1, 1);
  const double bob_den = g.col_payoff(0, 0) - g.col_payoff(0, 1) - g.col_payoff(1, 0) +
                         g.col_payoff(1, 1);
  if (std::abs(alice_den) < kDegenerateTol || std::abs(bob_den) < kDegenerateTol) {
    out.degenerate = true;
  } else {
    const double q_star = (g.row_payoff(1, 1) - g.row_payoff(0, 1)) / alice_den;
    const double p_star = (g.col_payoff(1, 1) - g.col_payoff(1, 0)) / bob_den;
    if (p_star > 0.0 && p_star < 1.0 && q_star > 0.0 && q_star < 1.0) {
      out.equilibria.push_back({p_star, q_star, true, false});
    }
  }
  for (ClassicalEquilibrium& e : out.equilibria) {
    e.grid_verified = classical_ne_gap(g, e.p, e.q, kVerifyStep) >= -kNeTol;
  }
  return out;
}

Matrix3x3Pair Matrix3x3Pair::rock_scissors_paper(double epsilon) {
  Matrix3x3Pair g;
  g.alpha = {{{-epsilon, 1.0, -1.0}, {-1.0, -epsilon, 1.0}, {1.0, -1.0, -epsilon}}};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) g.beta[i][j] = g.alpha[j][i];
  }
  return g;
}

bool Matrix3x3Pair::is_symmetric() const {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (alpha[i][j] != beta[j][i]) return false;
    }
  }
  return true;
}

bool Matrix3x3Pair::is_finite() const {
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      if (!std::isfinite(alpha[i][j]) || !std::isfinite(beta[i][j])) return false;
    }
  }
  return true;
}

std::pair<double, double> classical_payoff_3x3(const Matrix3x3Pair& g,
                                               const std::array<double, 3>& x,
                                               const std::array<double, 3>& y) {
  double a = 0.0, b = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      a += x[i] * y[j] * g.alpha[i][j];
      b += x[i] * y[j] * g.beta[i][j];
    }
  }
  return {a, b};
}

double ThreePlayerSymmetricSpec::payoff(int own, int other1, int other2) const {
  const int others_s2 = other1 + other2;
  if (own == 0) {
    return others_s2 == 0 ? alpha1 : others_s2 == 1 ? alpha3 : alpha5;
  }
  return others_s2 == 0 ? alpha2 : others_s2 == 1 ? alpha6 : alpha8;
}

bool ThreePlayerSymmetricSpec::is_finite() const {
  for (double v : {alpha1, alpha2, alpha3, alpha5, alpha6, alpha8}) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

}  // namespace qgess
