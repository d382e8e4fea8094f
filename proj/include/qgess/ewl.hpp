#ifndef QGESS_EWL_HPP
#define QGESS_EWL_HPP

// Two-qubit quantization with an entangling gate J(gamma) and its inverse.
// Both players start in |CC> = |00>; the final state is
// J^dag (U_A x U_B) J |00> and payoffs are read from its basis projections.

#include <array>
#include <utility>

#include "qgess/games.hpp"
#include "qgess/qmat.hpp"

namespace qgess {

/// U(theta, phi) = [[e^{i phi} cos(theta/2), sin(theta/2)],
///                  [-sin(theta/2), e^{-i phi} cos(theta/2)]]
/// with 0 <= theta <= pi and 0 <= phi <= pi/2.
class EWLStrategy {
 public:
  EWLStrategy(double theta, double phi);
  /// One-parameter subset: phi fixed at 0.
  static EWLStrategy one_parameter(double theta);

  static EWLStrategy cooperate() { return EWLStrategy(0.0, 0.0); }
  static EWLStrategy defect();
  static EWLStrategy q_hat();

  double theta() const { return theta_; }
  double phi() const { return phi_; }
  bool is_one_parameter() const { return one_parameter_; }

 private:
  double theta_;
  double phi_;
  bool one_parameter_ = false;
};

class EWLConfig {
 public:
  /// The game must have the PD-role pattern; gamma must lie in [0, pi/2].
  EWLConfig(const Bimatrix2& game, double gamma);

  const Bimatrix2& game() const { return game_; }
  const PdRoles& roles() const { return roles_; }
  double gamma() const { return gamma_; }

 private:
  Bimatrix2 game_;
  PdRoles roles_;
  double gamma_;
};

UnitaryMatrix strategy_unitary(const EWLStrategy& s);

/// J(gamma) = exp(i gamma D x D / 2) = cos(gamma/2) I + i sin(gamma/2) D x D,
/// exact because (D x D)^2 = I.
UnitaryMatrix entangler(double gamma);

StateVector ewl_final_state(const EWLConfig& cfg, const EWLStrategy& a, const EWLStrategy& b);

/// |<CC|psi>|^2, |<CD|psi>|^2, |<DC|psi>|^2, |<DD|psi>|^2
std::array<double, 4> ewl_probabilities(const EWLConfig& cfg, const EWLStrategy& a,
                                        const EWLStrategy& b);

/// (P_A, P_B); Bob's payoff uses the s <-> t swapped weights.
std::pair<double, double> ewl_payoffs(const EWLConfig& cfg, const EWLStrategy& a,
                                      const EWLStrategy& b);

/// Closed form for games with s = t, r = u and r - t > 0:
/// (r-t)/2 {1 + cos tA cos tB + sin tA sin tB sin(gamma) sin(phiA + phiB)} + t.
double ewl_symmetric_payoff_closed(const EWLConfig& cfg, const EWLStrategy& a,
                                   const EWLStrategy& b);

/// True when the closed form above applies to this game.
bool ewl_closed_form_applies(const PdRoles& roles);

}  // namespace qgess

#endif  // QGESS_EWL_HPP
