#include "qgess/ewl.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qgess {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kAngleTol = 1e-12;

double snap_angle(double x, double hi) {
  if (x < 0.0 && x > -kAngleTol) return 0.0;
  if (x > hi && x < hi + kAngleTol) return hi;
  return x;
}

CMatrix d_hat_matrix() {
  CMatrix d(2, 2);
  d << 0.0, 1.0, -1.0, 0.0;
  return d;
}

}  // namespace

EWLStrategy::EWLStrategy(double theta, double phi)
    : theta_(snap_angle(theta, kPi)), phi_(snap_angle(phi, kPi / 2)) {
  if (!(theta_ >= 0.0 && theta_ <= kPi)) {
    throw std::invalid_argument("EWLStrategy: theta outside [0, pi]");
  }
  if (!(phi_ >= 0.0 && phi_ <= kPi / 2)) {
    throw std::invalid_argument("EWLStrategy: phi outside [0, pi/2]");
  }
}

EWLStrategy EWLStrategy::one_parameter(double theta) {
  EWLStrategy s(theta, 0.0);
  s.one_parameter_ = true;
  return s;
}

EWLStrategy EWLStrategy::defect() { return one_parameter(kPi); }

EWLStrategy EWLStrategy::q_hat() { return EWLStrategy(0.0, kPi / 2); }

EWLConfig::EWLConfig(const Bimatrix2& game, double gamma)
    : game_(game), roles_(), gamma_(snap_angle(gamma, kPi / 2)) {
  const auto roles = game.pd_roles();
  if (!roles) {
    throw std::invalid_argument("EWLConfig: game lacks the (r,r) (s,t) / (t,s) (u,u) pattern");
  }
  roles_ = *roles;
  if (!(gamma_ >= 0.0 && gamma_ <= kPi / 2)) {
    throw std::invalid_argument("EWLConfig: gamma outside [0, pi/2]");
  }
}

UnitaryMatrix strategy_unitary(const EWLStrategy& s) {
  const double c = std::cos(s.theta() / 2);
  const double sn = std::sin(s.theta() / 2);
  const Complex e = std::polar(1.0, s.phi());
  CMatrix u(2, 2);
  u << e * c, sn, -sn, std::conj(e) * c;
  return UnitaryMatrix(u);
}

UnitaryMatrix entangler(double gamma) {
  if (!(gamma >= -kAngleTol && gamma <= kPi / 2 + kAngleTol)) {
    throw std::invalid_argument("entangler: gamma outside [0, pi/2]");
  }
  const CMatrix dd = tensor(d_hat_matrix(), d_hat_matrix());
  const CMatrix j = std::cos(gamma / 2) * CMatrix::Identity(4, 4) +
                    Complex(0.0, std::sin(gamma / 2)) * dd;
  return UnitaryMatrix(j);
}

StateVector ewl_final_state(const EWLConfig& cfg, const EWLStrategy& a, const EWLStrategy& b) {
  const UnitaryMatrix j = entangler(cfg.gamma());
  const UnitaryMatrix players = tensor(strategy_unitary(a), strategy_unitary(b));
  return apply(j.adjoint() * players * j, StateVector::basis(4, 0));
}

std::array<double, 4> ewl_probabilities(const EWLConfig& cfg, const EWLStrategy& a,
                                        const EWLStrategy& b) {
  const StateVector psi = ewl_final_state(cfg, a, b);
  return {psi.probability(0), psi.probability(1), psi.probability(2), psi.probability(3)};
}

std::pair<double, double> ewl_payoffs(const EWLConfig& cfg, const EWLStrategy& a,
                                      const EWLStrategy& b) {
  const auto pr = ewl_probabilities(cfg, a, b);
  const PdRoles& x = cfg.roles();
  return {x.r * pr[0] + x.s * pr[1] + x.t * pr[2] + x.u * pr[3],
          x.r * pr[0] + x.t * pr[1] + x.s * pr[2] + x.u * pr[3]};
}

bool ewl_closed_form_applies(const PdRoles& x) {
  return x.s == x.t && x.r == x.u && x.r - x.t > 0.0;
}

double ewl_symmetric_payoff_closed(const EWLConfig& cfg, const EWLStrategy& a,
                                   const EWLStrategy& b) {
  const PdRoles& x = cfg.roles();
  if (!ewl_closed_form_applies(x)) {
    throw std::domain_error("ewl_symmetric_payoff_closed: requires s = t, r = u, r > t");
  }
  const double mix = std::cos(a.theta()) * std::cos(b.theta()) +
                     std::sin(a.theta()) * std::sin(b.theta()) * std::sin(cfg.gamma()) *
                         std::sin(a.phi() + b.phi());
  return 0.5 * (x.r - x.t) * (1.0 + mix) + x.t;
}

}  // namespace qgess
