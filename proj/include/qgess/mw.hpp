#ifndef QGESS_MW_HPP
#define QGESS_MW_HPP

// Quantization by tactic mixing over a supplied pure initial state.
//
// Two- and three-player games use tactics {I, sigma_x} per qubit; p is the
// probability of I. The three-strategy game uses tactics {I, C, D} per qutrit
// with probabilities (1-p-p1, p, p1), where C swaps |1> and |3> and D swaps
// |1> and |2>. There is no disentangling gate: payoffs are read directly from
// the diagonal of the final density matrix.

#include <array>
#include <optional>
#include <utility>
#include <vector>

#include "qgess/games.hpp"
#include "qgess/qmat.hpp"

namespace qgess {

enum class Pairing {
  kDiagonal,  // a|S1 S1> + b|S2 S2>
  kAnti,      // a|S1 S2> + b|S2 S1>
};

class InitState2 {
 public:
  InitState2(Complex a, Complex b, Pairing pairing = Pairing::kDiagonal);
  /// Real nonnegative amplitudes with |b|^2 = bsq.
  static InitState2 from_bsq(double bsq, Pairing pairing = Pairing::kDiagonal);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  Pairing pairing() const { return pairing_; }
  double a_sq() const { return std::norm(a_); }
  double b_sq() const { return std::norm(b_); }
  StateVector state() const;

 private:
  Complex a_;
  Complex b_;
  Pairing pairing_;
};

/// a|S1 S1 S1> + b|S2 S2 S2>
class InitState3 {
 public:
  InitState3(Complex a, Complex b);
  static InitState3 from_bsq(double bsq);

  Complex a() const { return a_; }
  Complex b() const { return b_; }
  double b_sq() const { return std::norm(b_); }
  StateVector state() const;

 private:
  Complex a_;
  Complex b_;
};

/// sum_ij c_ij |ij> over two qutrits; indices 0..2 stand for |1>..|3>.
class QutritInitState {
 public:
  using Coefficients = std::array<std::array<Complex, 3>, 3>;

  explicit QutritInitState(const Coefficients& c);
  /// c_11 = 1
  static QutritInitState classical();
  /// c_12 = c_21 = c_13 = c_31 = 1/2
  static QutritInitState symmetric_entangled();

  Complex c(int i, int j) const { return c_.at(i).at(j); }
  double modulus_sq(int i, int j) const { return std::norm(c(i, j)); }
  /// |c_ij|^2 = |c_ji|^2 for all i, j.
  bool symmetric_play() const;
  StateVector state() const;

 private:
  Coefficients c_;
};

/// P_A = Phi . Omega . Upsilon^T
struct RSPPayoffFactors {
  /// Joint tactic probabilities, ordered with Alice's tactic varying fastest:
  /// (I,I) (C,I) (D,I) (I,C) (C,C) (D,C) (I,D) (C,D) (D,D).
  std::array<double, 9> phi{};
  /// Row k lists |c_ij|^2 permuted by the k-th joint tactic.
  std::array<std::array<double, 9>, 9> omega{};
  /// Row-major alpha_ij.
  std::array<double, 9> upsilon{};

  double alice_payoff() const;
};

const UnitaryMatrix& sigma_x();
const UnitaryMatrix& tactic_c();
const UnitaryMatrix& tactic_d();

DensityMatrix mw_final_density_2(const InitState2& init, MixedStrategy1 p, MixedStrategy1 q);
std::pair<double, double> mw_payoffs_2(const Bimatrix2& g, const InitState2& init,
                                       MixedStrategy1 p, MixedStrategy1 q);

/// Payoffs are bilinear in (p, q), so the quantum game equals the classical
/// mixed game of this bimatrix. Row/column 0 is tactic I, 1 is sigma_x.
Bimatrix2 mw_effective_bimatrix(const Bimatrix2& g, const InitState2& init);

struct SymmetricNeCandidates {
  /// Always contains 0 and 1; contains the mixed value only when it is in (0, 1).
  std::vector<double> candidates;
  /// Mixed value from the indifference condition, in range or not.
  std::optional<double> mixed;
  bool mixed_in_range = false;
  /// Indifference denominator vanished.
  bool degenerate = false;
};

/// Game (alpha,alpha) (beta,gamma) / (gamma,beta) (delta,delta) with a
/// diagonal initial state. Mixed candidate
/// p* = (|a|^2 (beta-delta) + |b|^2 (gamma-alpha)) / ((beta-delta) + (gamma-alpha)).
SymmetricNeCandidates mw_symmetric_ne_closed(const Bimatrix2& g, const InitState2& init);

DensityMatrix mw_final_density_3(const InitState3& init, MixedStrategy1 p, MixedStrategy1 q,
                                 MixedStrategy1 r);
/// (P_A, P_B, P_C) where p, q, r are the identity probabilities of A, B, C.
std::array<double, 3> mw_payoffs_3(const ThreePlayerSymmetricSpec& spec, const InitState3& init,
                                   MixedStrategy1 p, MixedStrategy1 q, MixedStrategy1 r);

struct ThreePlayerRoots {
  /// Roots in [0, 1], ascending, deduplicated.
  std::vector<double> roots;
  /// Real roots outside [0, 1].
  std::vector<double> out_of_range;
  /// ((sigma+omega)^2 - (2 eta)^2) bsq (1-bsq) + (eta^2 - sigma omega)
  double discriminant = 0.0;
  /// Coefficients of L p^2 + M p + N = 0.
  double quadratic = 0.0;
  double linear = 0.0;
  double constant = 0.0;
  bool linear_fallback = false;
  /// Every p satisfies the equation.
  bool identically_zero = false;
};

/// Symmetric mixed NE p* of the three-player game, from
/// P(p*,p*,p*) - P(p,p*,p*) = (p* - p)(L p*^2 + M p* + N).
ThreePlayerRoots three_player_mixed_ne(const ThreePlayerSymmetricSpec& spec, double bsq);

DensityMatrix rsp_final_density(const QutritInitState& init, const MixedStrategy2& a,
                                const MixedStrategy2& b);
RSPPayoffFactors rsp_payoff_factors(const Matrix3x3Pair& g, const QutritInitState& init,
                                    const MixedStrategy2& a, const MixedStrategy2& b);
/// Trace payoffs; Alice's is cross-checked against the factor product and a
/// disagreement above 1e-10 throws std::logic_error.
std::pair<double, double> rsp_payoffs(const Matrix3x3Pair& g, const QutritInitState& init,
                                      const MixedStrategy2& a, const MixedStrategy2& b);

/// Derivatives of the focal player's payoff with respect to its own p and p1,
/// with both players at `at`. Requires a symmetric-play initial state.
std::pair<double, double> rsp_gradients(const Matrix3x3Pair& g, const QutritInitState& init,
                                        const MixedStrategy2& at);

/// Payoffs between pure tactics (I, C, D) for both players.
Matrix3x3Pair rsp_effective_game(const Matrix3x3Pair& g, const QutritInitState& init);

}  // namespace qgess

#endif  // QGESS_MW_HPP
