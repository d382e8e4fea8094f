#ifndef QGESS_TESTS_ORACLES_HPP
#define QGESS_TESTS_ORACLES_HPP

// Reference implementations written independently of the library: plain
// nested vectors, explicit loops, no Eigen.

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

using C = std::complex<double>;
using Mat = std::vector<std::vector<C>>;
using Vec = std::vector<C>;

constexpr double kPi = std::numbers::pi;

inline Mat zeros(int n) { return Mat(n, std::vector<C>(n, 0.0)); }

inline Mat eye(int n) {
  Mat m = zeros(n);
  for (int i = 0; i < n; ++i) m[i][i] = 1.0;
  return m;
}

inline Mat mul(const Mat& a, const Mat& b) {
  const std::size_t n = a.size(), k = b.size(), m = b[0].size();
  Mat out(n, std::vector<C>(m, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
  return out;
}

inline Vec mul(const Mat& a, const Vec& v) {
  Vec out(a.size(), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) out[i] += a[i][j] * v[j];
  return out;
}

inline Mat dagger(const Mat& a) {
  Mat out(a[0].size(), std::vector<C>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = std::conj(a[i][j]);
  return out;
}

inline Mat kron(const Mat& a, const Mat& b) {
  const std::size_t ra = a.size(), ca = a[0].size(), rb = b.size(), cb = b[0].size();
  Mat out(ra * rb, std::vector<C>(ca * cb));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ca; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < cb; ++l) out[i * rb + k][j * cb + l] = a[i][j] * b[k][l];
  return out;
}

// ---------------------------------------------------------------------------
// Two-qubit EWL game

inline Mat ewl_u(double theta, double phi) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return {{std::polar(c, phi), s}, {-s, std::polar(c, -phi)}};
}

inline Mat ewl_j(double gamma) {
  const Mat d = {{0.0, 1.0}, {-1.0, 0.0}};
  const Mat dd = kron(d, d);
  Mat j = eye(4);
  for (int i = 0; i < 4; ++i)
    for (int k = 0; k < 4; ++k)
      j[i][k] = std::cos(gamma / 2) * (i == k ? 1.0 : 0.0) + C(0, std::sin(gamma / 2)) * dd[i][k];
  return j;
}

/// Probabilities of CC, CD, DC, DD.
inline std::array<double, 4> ewl_probs(double ta, double pa, double tb, double pb, double gamma) {
  const Mat j = ewl_j(gamma);
  const Mat u = kron(ewl_u(ta, pa), ewl_u(tb, pb));
  const Vec psi = mul(mul(dagger(j), mul(u, j)), Vec{1.0, 0.0, 0.0, 0.0});
  return {std::norm(psi[0]), std::norm(psi[1]), std::norm(psi[2]), std::norm(psi[3])};
}

/// (P_A, P_B) for the PD-role game (r,r)(s,t)/(t,s)(u,u).
inline std::pair<double, double> ewl_pay(double r, double s, double t, double u, double ta,
                                         double pa, double tb, double pb, double gamma) {
  const auto pr = ewl_probs(ta, pa, tb, pb, gamma);
  return {r * pr[0] + s * pr[1] + t * pr[2] + u * pr[3],
          r * pr[0] + t * pr[1] + s * pr[2] + u * pr[3]};
}

// ---------------------------------------------------------------------------
// Tactic mixing with permutation tactics: only basis populations matter.

/// Outcome distribution over |ij> after Alice flips with prob 1-p and Bob with 1-q.
inline std::array<double, 4> mw2_outcomes(const std::array<double, 4>& pop0, double p, double q) {
  std::array<double, 4> out{};
  for (int fa = 0; fa < 2; ++fa) {
    for (int fb = 0; fb < 2; ++fb) {
      const double w = (fa ? 1 - p : p) * (fb ? 1 - q : q);
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) out[(i ^ fa) * 2 + (j ^ fb)] += w * pop0[i * 2 + j];
    }
  }
  return out;
}

/// Payoffs for a bimatrix given as row[i][j], col[i][j].
inline std::pair<double, double> mw2_pay(const double row[2][2], const double col[2][2],
                                         const std::array<double, 4>& pop0, double p, double q) {
  const auto o = mw2_outcomes(pop0, p, q);
  double a = 0, b = 0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      a += row[i][j] * o[i * 2 + j];
      b += col[i][j] * o[i * 2 + j];
    }
  return {a, b};
}

/// Three players, a|000> + b|111>; payoff to the first player, focal entries
/// alpha1 (000), alpha2 (100), alpha3 (010, 001), alpha5 (011), alpha6 (101, 110), alpha8 (111).
inline double mw3_pay_a(const std::array<double, 6>& al, double bsq, double p, double q, double r) {
  const double a1 = al[0], a2 = al[1], a3 = al[2], a5 = al[3], a6 = al[4], a8 = al[5];
  auto entry = [&](int i, int j, int k) {
    const int others = j + k;
    if (i == 0) return others == 0 ? a1 : others == 1 ? a3 : a5;
    return others == 0 ? a2 : others == 1 ? a6 : a8;
  };
  double total = 0;
  for (int fa = 0; fa < 2; ++fa)
    for (int fb = 0; fb < 2; ++fb)
      for (int fc = 0; fc < 2; ++fc) {
        const double w = (fa ? 1 - p : p) * (fb ? 1 - q : q) * (fc ? 1 - r : r);
        total += w * ((1 - bsq) * entry(fa, fb, fc) + bsq * entry(1 - fa, 1 - fb, 1 - fc));
      }
  return total;
}

/// Qutrit tactics: I, C (swaps 0 and 2), D (swaps 0 and 1).
inline int qutrit_tactic(int tactic, int level) {
  if (tactic == 1) return level == 0 ? 2 : level == 2 ? 0 : 1;
  if (tactic == 2) return level == 0 ? 1 : level == 1 ? 0 : 2;
  return level;
}

/// Payoffs for populations |c_ij|^2, Alice mixing (1-p-p1, p, p1) over (I, C, D).
inline std::pair<double, double> rsp_pay(const double alpha[3][3], const double beta[3][3],
                                         const double pop0[3][3], double p, double p1, double q,
                                         double q1) {
  const double wa[3] = {1 - p - p1, p, p1}, wb[3] = {1 - q - q1, q, q1};
  double a = 0, b = 0;
  for (int ta = 0; ta < 3; ++ta)
    for (int tb = 0; tb < 3; ++tb)
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const double w = wa[ta] * wb[tb] * pop0[i][j];
          const int ii = qutrit_tactic(ta, i), jj = qutrit_tactic(tb, j);
          a += w * alpha[ii][jj];
          b += w * beta[ii][jj];
        }
  return {a, b};
}

inline Mat random_unitary2(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 2 * kPi);
  const double t = u(rng) / 4, a = u(rng), b = u(rng), g = u(rng);
  const C e = std::polar(1.0, g);
  return {{e * std::polar(std::cos(t), a), e * std::polar(std::sin(t), b)},
          {-e * std::polar(std::sin(t), -b), e * std::polar(std::cos(t), -a)}};
}

}  // namespace oracle

#endif  // QGESS_TESTS_ORACLES_HPP
