#include "qgess/mw.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qgess {

namespace {

constexpr double kNormTol = 1e-12;
constexpr double kDegenerateTol = 1e-9;
constexpr double kRootTol = 1e-12;
constexpr double kDualPathTol = 1e-10;

void require_normalized(double total, const char* what) {
  if (std::abs(total - 1.0) > kNormTol) {
    throw std::invalid_argument(std::string(what) + ": coefficients not normalized");
  }
}

UnitaryMatrix permutation_unitary(std::initializer_list<int> image) {
  const int n = static_cast<int>(image.size());
  CMatrix m = CMatrix::Zero(n, n);
  int col = 0;
  for (int row : image) m(row, col++) = 1.0;
  return UnitaryMatrix(m);
}

// Sum over tactic profiles of w * K rho K^dag, one factor per subsystem.
template <std::size_t Players, std::size_t Tactics>
DensityMatrix mix_tactics(const StateVector& psi,
                          const std::array<std::array<double, Tactics>, Players>& weights,
                          const std::array<const UnitaryMatrix*, Tactics>& tactics) {
  const DensityMatrix rho = DensityMatrix::pure(psi);
  std::vector<double> w;
  std::vector<DensityMatrix> terms;
  std::array<std::size_t, Players> idx{};
  while (true) {
    double weight = 1.0;
    for (std::size_t k = 0; k < Players; ++k) weight *= weights[k][idx[k]];
    if (weight != 0.0) {
      UnitaryMatrix op = *tactics[idx[0]];
      for (std::size_t k = 1; k < Players; ++k) op = tensor(op, *tactics[idx[k]]);
      w.push_back(weight);
      terms.push_back(evolve_density(rho, op));
    }
    std::size_t k = Players;
    while (k > 0) {
      --k;
      if (++idx[k] < Tactics) break;
      idx[k] = 0;
      if (k == 0) return convex_mixture(w, terms);
    }
  }
}

std::array<double, 2> two_tactics(MixedStrategy1 p) { return {p.p(), 1.0 - p.p()}; }

std::array<double, 3> three_tactics(const MixedStrategy2& s) {
  return {std::max(0.0, s.rest()), s.p(), s.p1()};
}

}  // namespace

// ---------------------------------------------------------------------------

InitState2::InitState2(Complex a, Complex b, Pairing pairing) : a_(a), b_(b), pairing_(pairing) {
  require_normalized(std::norm(a) + std::norm(b), "InitState2");
}

InitState2 InitState2::from_bsq(double bsq, Pairing pairing) {
  if (!(bsq >= 0.0 && bsq <= 1.0)) throw std::invalid_argument("InitState2: |b|^2 outside [0, 1]");
  return InitState2(std::sqrt(1.0 - bsq), std::sqrt(bsq), pairing);
}

StateVector InitState2::state() const {
  CVector v = CVector::Zero(4);
  if (pairing_ == Pairing::kDiagonal) {
    v(0) = a_;
    v(3) = b_;
  } else {
    v(1) = a_;
    v(2) = b_;
  }
  return StateVector(v);
}

InitState3::InitState3(Complex a, Complex b) : a_(a), b_(b) {
  require_normalized(std::norm(a) + std::norm(b), "InitState3");
}

InitState3 InitState3::from_bsq(double bsq) {
  if (!(bsq >= 0.0 && bsq <= 1.0)) throw std::invalid_argument("InitState3: |b|^2 outside [0, 1]");
  return InitState3(std::sqrt(1.0 - bsq), std::sqrt(bsq));
}

StateVector InitState3::state() const {
  CVector v = CVector::Zero(8);
  v(0) = a_;
  v(7) = b_;
  return StateVector(v);
}

QutritInitState::QutritInitState(const Coefficients& c) : c_(c) {
  double total = 0.0;
  for (const auto& row : c_) {
    for (const Complex& x : row) total += std::norm(x);
  }
  require_normalized(total, "QutritInitState");
}

QutritInitState QutritInitState::classical() {
  Coefficients c{};
  c[0][0] = 1.0;
  return QutritInitState(c);
}

QutritInitState QutritInitState::symmetric_entangled() {
  Coefficients c{};
  c[0][1] = c[1][0] = c[0][2] = c[2][0] = 0.5;
  return QutritInitState(c);
}

bool QutritInitState::symmetric_play() const {
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      if (std::abs(modulus_sq(i, j) - modulus_sq(j, i)) > kNormTol) return false;
    }
  }
  return true;
}

StateVector QutritInitState::state() const {
  CVector v(9);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) v(3 * i + j) = c_[i][j];
  }
  return StateVector(v);
}

double RSPPayoffFactors::alice_payoff() const {
  double out = 0.0;
  for (int k = 0; k < 9; ++k) {
    double row = 0.0;
    for (int m = 0; m < 9; ++m) row += omega[k][m] * upsilon[m];
    out += phi[k] * row;
  }
  return out;
}

// ---------------------------------------------------------------------------

const UnitaryMatrix& sigma_x() {
  static const UnitaryMatrix x = permutation_unitary({1, 0});
  return x;
}

const UnitaryMatrix& tactic_c() {
  static const UnitaryMatrix c = permutation_unitary({2, 1, 0});
  return c;
}

const UnitaryMatrix& tactic_d() {
  static const UnitaryMatrix d = permutation_unitary({1, 0, 2});
  return d;
}

DensityMatrix mw_final_density_2(const InitState2& init, MixedStrategy1 p, MixedStrategy1 q) {
  static const UnitaryMatrix id = UnitaryMatrix::identity(2);
  return mix_tactics<2, 2>(init.state(), {two_tactics(p), two_tactics(q)}, {&id, &sigma_x()});
}

std::pair<double, double> mw_payoffs_2(const Bimatrix2& g, const InitState2& init,
                                       MixedStrategy1 p, MixedStrategy1 q) {
  const DensityMatrix rho = mw_final_density_2(init, p, q);
  std::array<double, 4> wa{}, wb{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      wa[2 * i + j] = g.row_payoff(i, j);
      wb[2 * i + j] = g.col_payoff(i, j);
    }
  }
  return {rho.expectation_diagonal(wa), rho.expectation_diagonal(wb)};
}

Bimatrix2 mw_effective_bimatrix(const Bimatrix2& g, const InitState2& init) {
  Bimatrix2::Cells cells{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      const auto [pa, pb] =
          mw_payoffs_2(g, init, MixedStrategy1(i == 0 ? 1.0 : 0.0), MixedStrategy1(j == 0 ? 1.0 : 0.0));
      cells[i][j] = {pa, pb};
    }
  }
  return Bimatrix2(cells);
}

SymmetricNeCandidates mw_symmetric_ne_closed(const Bimatrix2& g, const InitState2& init) {
  if (!g.is_symmetric()) {
    throw std::invalid_argument("mw_symmetric_ne_closed: game is not symmetric");
  }
  if (init.pairing() != Pairing::kDiagonal) {
    throw std::invalid_argument("mw_symmetric_ne_closed: requires a diagonal initial state");
  }
  const double alpha = g.row_payoff(0, 0), beta = g.row_payoff(0, 1);
  const double gamma = g.row_payoff(1, 0), delta = g.row_payoff(1, 1);
  SymmetricNeCandidates out;
  out.candidates = {0.0, 1.0};
  const double den = (beta - delta) + (gamma - alpha);
  if (std::abs(den) < kDegenerateTol) {
    out.degenerate = true;
    return out;
  }
  const double p = (init.a_sq() * (beta - delta) + init.b_sq() * (gamma - alpha)) / den;
  out.mixed = p;
  out.mixed_in_range = p > 0.0 && p < 1.0;
  if (out.mixed_in_range) out.candidates.insert(out.candidates.begin() + 1, p);
  return out;
}

DensityMatrix mw_final_density_3(const InitState3& init, MixedStrategy1 p, MixedStrategy1 q,
                                 MixedStrategy1 r) {
  static const UnitaryMatrix id = UnitaryMatrix::identity(2);
  return mix_tactics<3, 2>(init.state(), {two_tactics(p), two_tactics(q), two_tactics(r)},
                           {&id, &sigma_x()});
}

std::array<double, 3> mw_payoffs_3(const ThreePlayerSymmetricSpec& spec, const InitState3& init,
                                   MixedStrategy1 p, MixedStrategy1 q, MixedStrategy1 r) {
  const DensityMatrix rho = mw_final_density_3(init, p, q, r);
  std::array<double, 8> wa{}, wb{}, wc{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      for (int k = 0; k < 2; ++k) {
        const int idx = 4 * i + 2 * j + k;
        wa[idx] = spec.payoff(i, j, k);
        wb[idx] = spec.payoff(j, i, k);
        wc[idx] = spec.payoff(k, i, j);
      }
    }
  }
  return {rho.expectation_diagonal(wa), rho.expectation_diagonal(wb),
          rho.expectation_diagonal(wc)};
}

ThreePlayerRoots three_player_mixed_ne(const ThreePlayerSymmetricSpec& spec, double bsq) {
  if (!(bsq >= 0.0 && bsq <= 1.0)) {
    throw std::invalid_argument("three_player_mixed_ne: |b|^2 outside [0, 1]");
  }
  const double s = spec.sigma(), e = spec.eta(), w = spec.omega();
  ThreePlayerRoots out;
  out.quadratic = (1.0 - 2.0 * bsq) * (s + w - 2.0 * e);
  out.linear = 2.0 * (bsq * (s + w - 2.0 * e) - w + e);
  out.constant = w - bsq * (s + w);
  out.discriminant = ((s + w) * (s + w) - 4.0 * e * e) * bsq * (1.0 - bsq) + (e * e - s * w);

  std::vector<double> real_roots;
  const double scale = std::max({std::abs(out.quadratic), std::abs(out.linear),
                                 std::abs(out.constant), 1.0});
  if (std::abs(out.quadratic) < kRootTol * scale) {
    out.linear_fallback = true;
    if (std::abs(out.linear) < kRootTol * scale) {
      out.identically_zero = std::abs(out.constant) < kRootTol * scale;
    } else {
      real_roots.push_back(-out.constant / out.linear);
    }
  } else {
    // The quadratic's own discriminant is 4x the reported one.
    double disc = out.discriminant;
    if (disc < 0.0 && disc > -kRootTol * scale * scale) disc = 0.0;
    if (disc >= 0.0) {
      const double sq = std::sqrt(disc);
      const double centre = -out.linear / 2.0;
      real_roots.push_back((centre - sq) / out.quadratic);
      real_roots.push_back((centre + sq) / out.quadratic);
    }
  }
  std::sort(real_roots.begin(), real_roots.end());
  for (double x : real_roots) {
    if (x >= -kRootTol && x <= 1.0 + kRootTol) {
      const double clipped = std::clamp(x, 0.0, 1.0);
      if (out.roots.empty() || std::abs(out.roots.back() - clipped) > 1e-12) {
        out.roots.push_back(clipped);
      }
    } else {
      out.out_of_range.push_back(x);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix rsp_final_density(const QutritInitState& init, const MixedStrategy2& a,
                                const MixedStrategy2& b) {
  static const UnitaryMatrix id = UnitaryMatrix::identity(3);
  return mix_tactics<2, 3>(init.state(), {three_tactics(a), three_tactics(b)},
                           {&id, &tactic_c(), &tactic_d()});
}

RSPPayoffFactors rsp_payoff_factors(const Matrix3x3Pair& g, const QutritInitState& init,
                                    const MixedStrategy2& a, const MixedStrategy2& b) {
  // For each joint tactic, the (i,j) of the initial coefficient that lands on
  // each payoff cell, cells in row-major order (1-based labels).
  static constexpr int kOmega[9][9][2] = {
      {{1, 1}, {1, 2}, {1, 3}, {2, 1}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}},
      {{3, 1}, {3, 2}, {3, 3}, {2, 1}, {2, 2}, {2, 3}, {1, 1}, {1, 2}, {1, 3}},
      {{2, 1}, {2, 2}, {2, 3}, {1, 1}, {1, 2}, {1, 3}, {3, 1}, {3, 2}, {3, 3}},
      {{1, 3}, {1, 2}, {1, 1}, {2, 3}, {2, 2}, {2, 1}, {3, 3}, {3, 2}, {3, 1}},
      {{3, 3}, {3, 2}, {3, 1}, {2, 3}, {2, 2}, {2, 1}, {1, 3}, {1, 2}, {1, 1}},
      {{2, 3}, {2, 2}, {2, 1}, {1, 3}, {1, 2}, {1, 1}, {3, 3}, {3, 2}, {3, 1}},
      {{1, 2}, {1, 1}, {1, 3}, {2, 2}, {2, 1}, {2, 3}, {3, 2}, {3, 1}, {3, 3}},
      {{3, 2}, {3, 1}, {3, 3}, {2, 2}, {2, 1}, {2, 3}, {1, 2}, {1, 1}, {1, 3}},
      {{2, 2}, {2, 1}, {2, 3}, {1, 2}, {1, 1}, {1, 3}, {3, 2}, {3, 1}, {3, 3}},
  };
  const auto ta = three_tactics(a);
  const auto tb = three_tactics(b);
  RSPPayoffFactors f;
  for (int jb = 0; jb < 3; ++jb) {
    for (int ia = 0; ia < 3; ++ia) f.phi[3 * jb + ia] = ta[ia] * tb[jb];
  }
  for (int k = 0; k < 9; ++k) {
    for (int m = 0; m < 9; ++m) {
      f.omega[k][m] = init.modulus_sq(kOmega[k][m][0] - 1, kOmega[k][m][1] - 1);
    }
  }
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) f.upsilon[3 * i + j] = g.alpha[i][j];
  }
  return f;
}

std::pair<double, double> rsp_payoffs(const Matrix3x3Pair& g, const QutritInitState& init,
                                      const MixedStrategy2& a, const MixedStrategy2& b) {
  const DensityMatrix rho = rsp_final_density(init, a, b);
  std::array<double, 9> wa{}, wb{};
  double scale = 1.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      wa[3 * i + j] = g.alpha[i][j];
      wb[3 * i + j] = g.beta[i][j];
      scale = std::max(scale, std::abs(g.alpha[i][j]));
    }
  }
  const double pa = rho.expectation_diagonal(wa);
  const double pb = rho.expectation_diagonal(wb);
  const double factored = rsp_payoff_factors(g, init, a, b).alice_payoff();
  if (std::abs(pa - factored) > kDualPathTol * scale) {
    throw std::logic_error("rsp_payoffs: trace and factor paths disagree");
  }
  return {pa, pb};
}

std::pair<double, double> rsp_gradients(const Matrix3x3Pair& g, const QutritInitState& init,
                                        const MixedStrategy2& at) {
  if (!init.symmetric_play()) {
    throw std::invalid_argument("rsp_gradients: initial state is not symmetric-play");
  }
  auto c = [&](int i, int j) { return init.modulus_sq(i - 1, j - 1); };
  auto al = [&](int i, int j) { return g.alpha[i - 1][j - 1]; };
  const double p = at.p(), p1 = at.p1();

  const double d1 = c(1, 1) - c(3, 1), d2 = c(1, 3) - c(3, 3), d3 = c(1, 2) - c(3, 2);
  const double e1 = c(2, 1) - c(1, 1), e2 = c(2, 2) - c(1, 2), e3 = c(2, 3) - c(1, 3);

  const double dp = p * (d1 - d2) * ((al(1, 1) + al(3, 3)) - (al(1, 3) + al(3, 1))) +
                    p1 * (d1 - d3) * ((al(1, 1) + al(3, 2)) - (al(1, 2) + al(3, 1))) -
                    d1 * (al(1, 1) - al(3, 1)) - d2 * (al(1, 3) - al(3, 3)) -
                    d3 * (al(1, 2) - al(3, 2));
  const double dp1 = p * (e3 - e1) * ((al(1, 1) + al(2, 3)) - (al(1, 3) + al(2, 1))) +
                     p1 * (e2 - e1) * ((al(1, 1) + al(2, 2)) - (al(1, 2) + al(2, 1))) +
                     e1 * (al(1, 1) - al(2, 1)) + e2 * (al(1, 2) - al(2, 2)) +
                     e3 * (al(1, 3) - al(2, 3));
  return {dp, dp1};
}

Matrix3x3Pair rsp_effective_game(const Matrix3x3Pair& g, const QutritInitState& init) {
  static const std::array<MixedStrategy2, 3> pure = {
      MixedStrategy2(0.0, 0.0), MixedStrategy2(1.0, 0.0), MixedStrategy2(0.0, 1.0)};
  Matrix3x3Pair out;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const auto [pa, pb] = rsp_payoffs(g, init, pure[i], pure[j]);
      out.alpha[i][j] = pa;
      out.beta[i][j] = pb;
    }
  }
  return out;
}

}  // namespace qgess
