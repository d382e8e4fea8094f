#ifndef QGESS_GAMES_HPP
#define QGESS_GAMES_HPP

// Classical game specifications and classical mixed-strategy payoffs.
//
// Pure strategies are indexed from 0: index 0 is S1 (C, or R for the
// three-strategy game), index 1 is S2 (D, or S). A one-number mixed strategy p
// is always the probability of S1.

#include <array>
#include <optional>
#include <utility>
#include <vector>

namespace qgess {

/// Probability of the first pure strategy (or of the identity tactic).
class MixedStrategy1 {
 public:
  explicit MixedStrategy1(double p);
  double p() const { return p_; }

 private:
  double p_;
};

/// Probabilities (p, p1) of the second and third tactic; the first gets 1-p-p1.
class MixedStrategy2 {
 public:
  MixedStrategy2(double p, double p1);
  double p() const { return p_; }
  double p1() const { return p1_; }
  double rest() const { return 1.0 - p_ - p1_; }

 private:
  double p_;
  double p1_;
};

struct Cell {
  double row = 0.0;  // payoff to Alice (row player)
  double col = 0.0;  // payoff to Bob (column player)

  bool operator==(const Cell&) const = default;
};

/// PD-role aliases: (r,r) (s,t) / (t,s) (u,u).
struct PdRoles {
  double r = 0.0;
  double s = 0.0;
  double t = 0.0;
  double u = 0.0;
};

class Bimatrix2 {
 public:
  using Cells = std::array<std::array<Cell, 2>, 2>;

  explicit Bimatrix2(const Cells& cells);

  static Bimatrix2 from_roles(const PdRoles& roles);
  /// (alpha,alpha) (beta,gamma) / (gamma,beta) (delta,delta)
  static Bimatrix2 symmetric(double alpha, double beta, double gamma, double delta);
  /// (alpha,beta) (gamma,gamma) / (gamma,gamma) (beta,alpha)
  static Bimatrix2 battle_of_sexes(double alpha, double beta, double gamma);
  static Bimatrix2 prisoners_dilemma() { return from_roles({3.0, 0.0, 5.0, 1.0}); }

  const Cell& cell(int i, int j) const { return cells_.at(i).at(j); }
  double row_payoff(int i, int j) const { return cell(i, j).row; }
  double col_payoff(int i, int j) const { return cell(i, j).col; }

  /// Bob's matrix is the transpose of Alice's.
  bool is_symmetric() const;
  std::optional<PdRoles> pd_roles() const;

  bool operator==(const Bimatrix2&) const = default;

 private:
  Cells cells_;
};

std::pair<double, double> mixed_payoff_bimatrix(const Bimatrix2& g, MixedStrategy1 p,
                                                MixedStrategy1 q);

struct ClassicalEquilibrium {
  double p = 0.0;
  double q = 0.0;
  bool interior = false;
  /// Passed the best-response grid scan at step 1e-3.
  bool grid_verified = false;
};

struct ClassicalEquilibria {
  std::vector<ClassicalEquilibrium> equilibria;
  /// An indifference denominator vanished; only pure candidates were searched.
  bool degenerate = false;
};

/// Pure equilibria by best-response test, interior equilibrium from the two
/// indifference conditions. Every candidate is cross-checked on a deviation grid.
ClassicalEquilibria classical_equilibria_2x2(const Bimatrix2& g);

/// min over grid deviations of both one-sided NE differences at (p, q).
/// Nonnegative (up to rounding) exactly when (p, q) is a NE on the grid.
double classical_ne_gap(const Bimatrix2& g, double p, double q, double grid_step);

/// Two-player game with three pure strategies per player.
struct Matrix3x3Pair {
  std::array<std::array<double, 3>, 3> alpha{};  // row player
  std::array<std::array<double, 3>, 3> beta{};   // column player

  /// Modified Rock-Scissors-Paper with draw premium: -eps on the diagonal.
  static Matrix3x3Pair rock_scissors_paper(double epsilon);

  bool is_symmetric() const;
  bool is_finite() const;
};

/// Classical payoffs when Alice mixes x and Bob mixes y over the three pure strategies.
std::pair<double, double> classical_payoff_3x3(const Matrix3x3Pair& g,
                                               const std::array<double, 3>& x,
                                               const std::array<double, 3>& y);

/// Symmetric three-player 2x2x2 game defined by six constants. The remaining
/// entries follow from anonymity (alpha4 = alpha3, alpha7 = alpha6).
struct ThreePlayerSymmetricSpec {
  double alpha1 = 0.0;  // S1 against (S1, S1)
  double alpha2 = 0.0;  // S2 against (S1, S1)
  double alpha3 = 0.0;  // S1 against one S1 and one S2
  double alpha5 = 0.0;  // S1 against (S2, S2)
  double alpha6 = 0.0;  // S2 against one S1 and one S2
  double alpha8 = 0.0;  // S2 against (S2, S2)

  double sigma() const { return alpha1 - alpha2; }
  double eta() const { return alpha3 - alpha6; }
  double omega() const { return alpha5 - alpha8; }

  /// Payoff to a focal player using pure strategy `own` against `other1`, `other2`.
  double payoff(int own, int other1, int other2) const;
  bool is_finite() const;
};

}  // namespace qgess

#endif  // QGESS_GAMES_HPP
