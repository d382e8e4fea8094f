#include "qgess/catalog.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "qgess/ewl.hpp"
#include "qgess/games.hpp"
#include "qgess/mw.hpp"
#include "qgess/scenario.hpp"
#include "qgess/stability.hpp"

namespace qgess {

using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTol = 1e-9;
/// Incumbent share used for fitness comparisons ("almost all of the population").
constexpr double kHighFrequency = 1.0 - 1e-6;

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

const json& analysis(const json& report, const std::string& name) {
  for (const json& r : report.at("results")) {
    if (r.at("analysis") == name) return r;
  }
  throw std::runtime_error("report has no '" + name + "' analysis");
}

const json& ess_report(const json& report, std::size_t k) {
  return analysis(report, "ess").at("reports").at(k);
}

std::string ess_status(const json& report, std::size_t k) {
  return ess_report(report, k).at("ess_status").get<std::string>();
}

double payoff_at(const json& report, std::size_t profile, std::size_t player) {
  return analysis(report, "payoff").at("profiles").at(profile).at("payoffs").at(player).get<double>();
}

json pair_json(double p, double q) { return {{"p", p}, {"q", q}}; }

/// max over a grid of |lhs - rhs|.
template <typename F>
double max_dev_2d(int n1, int n2, F f) {
  double worst = 0.0;
  for (int i = 0; i < n1; ++i) {
    for (int j = 0; j < n2; ++j) worst = std::max(worst, std::abs(f(i, j)));
  }
  return worst;
}

void check_display(CaseLog& log, const std::string& what, double dev) {
  log.check(dev <= kTol, what + " matches the simulator (max deviation " + fmt(dev) + ")");
}

/// A published formula that the simulator contradicts: reported, not failed.
void published_display(CaseLog& log, const std::string& what, double dev) {
  if (dev <= kTol) {
    log.check(true, "published " + what + " matches the simulator (max deviation " + fmt(dev) + ")");
  } else {
    log.info("MISMATCH published " + what + " deviates from the simulator by up to " + fmt(dev));
  }
}

SymmetricPayoffFn ewl_fn(const EWLConfig& cfg) {
  return {StrategySpace::ewl_rect(), [cfg](const Strategy& x, const Strategy& y) {
            return ewl_payoffs(cfg, EWLStrategy(x[0], x[1]), EWLStrategy(y[0], y[1])).first;
          }};
}

double theta_at(int i) { return kPi * i / 100.0; }
double phi_at(int j) { return kPi / 2 * j / 50.0; }

const EWLConfig& pd_config() {
  static const EWLConfig cfg(Bimatrix2::prisoners_dilemma(), kPi / 2);
  return cfg;
}

double pd_payoff(const EWLStrategy& a, const EWLStrategy& b) {
  return ewl_payoffs(pd_config(), a, b).first;
}

json ewl_pd_base(const std::string& label) {
  return {{"label", label},
          {"scheme", "EWL"},
          {"game", {{"pd", {3, 0, 5, 1}}}},
          {"initial_state", {{"gamma", kPi / 2}}}};
}

// ---------------------------------------------------------------------------
// EWL prisoners' dilemma

std::vector<NamedConfig> case_a_configs() {
  json c = ewl_pd_base("one-parameter mutants against D");
  c["candidates"] = {"D"};
  c["analyses"] = {"payoff", "ess"};
  c["profiles"] = json::array({json::array({"D", "D"})});
  c["mutants"] = {{"theta_count", 101}, {"phi", {0.0}}};
  return {{"one-parameter", c}};
}

void case_a_check(const std::vector<json>& reports, CaseLog& log) {
  const json& r = reports.at(0);
  log.near("P(D,D)", payoff_at(r, 0, 0), 1.0, kTol);
  log.equal("D against one-parameter mutants", ess_status(r, 0), "ESS");

  const EWLStrategy d = EWLStrategy::defect();
  auto c2 = [](int i) { return std::pow(std::cos(theta_at(i) / 2), 2); };
  auto s2 = [](int i) { return std::pow(std::sin(theta_at(i) / 2), 2); };
  auto u = [](int i) { return EWLStrategy::one_parameter(theta_at(i)); };
  check_display(log, "P(U(theta),D) = sin^2(theta/2)",
                max_dev_2d(101, 1, [&](int i, int) { return pd_payoff(u(i), d) - s2(i); }));
  check_display(log, "P(D,U(theta)) = 5cos^2(theta/2) + sin^2(theta/2)",
                max_dev_2d(101, 1, [&](int i, int) {
                  return pd_payoff(d, u(i)) - (5 * c2(i) + s2(i));
                }));
  published_display(log, "P(U(theta),U(theta)) = 2cos^2 + 5cos^2 sin^2 + 1",
                    max_dev_2d(101, 1, [&](int i, int) {
                      return pd_payoff(u(i), u(i)) - (2 * c2(i) + 5 * c2(i) * s2(i) + 1);
                    }));
  check_display(log, "P(U(theta),U(theta)) = 1 + 3c - c^2 with c = cos^2(theta/2)",
                max_dev_2d(101, 1, [&](int i, int) {
                  return pd_payoff(u(i), u(i)) - (1 + 3 * c2(i) - c2(i) * c2(i));
                }));

  double worst_first = 1e300, worst_fitness = 1e300;
  const SymmetricPayoffFn f = ewl_fn(pd_config());
  for (int i = 0; i < 100; ++i) {
    const Strategy y{theta_at(i), 0.0};
    worst_first = std::min(worst_first, pd_payoff(d, d) - pd_payoff(u(i), d));
    const auto [wd, wu] = fitness_pair(f, {kPi, 0.0}, y, kHighFrequency);
    worst_fitness = std::min(worst_fitness, wd - wu);
  }
  log.check(worst_first > 0, "P(D,D) > P(U(theta),D) for theta in [0, pi) (min margin " +
                                 fmt(worst_first) + ")");
  log.check(worst_fitness > 0, "W(D) > W(U(theta)) at F_D = " + fmt(kHighFrequency) +
                                   " (min margin " + fmt(worst_fitness) + ")");
}

const double kPhiC = std::asin(1.0 / std::sqrt(5.0));
const std::vector<double> kSampledThetas = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, 0.95 * kPi};

std::vector<NamedConfig> case_b_configs() {
  std::vector<NamedConfig> out;
  for (const auto& [name, phi] : {std::pair{"below-threshold", kPhiC - 0.01},
                                  std::pair{"above-threshold", kPhiC + 0.01}}) {
    json c = ewl_pd_base(std::string("D against two-parameter mutants, ") + name);
    c["candidates"] = {"D"};
    c["analyses"] = {"ess"};
    json mutants = json::array();
    for (double t : kSampledThetas) mutants.push_back({t, phi});
    c["mutants"] = mutants;
    out.push_back({name, c});
  }
  json g = ewl_pd_base("D against the full two-parameter grid");
  g["candidates"] = {"D"};
  g["analyses"] = {"ess"};
  out.push_back({"full-grid", g});
  return out;
}

void case_b_check(const std::vector<json>& reports, CaseLog& log) {
  log.equal("D at phi = arcsin(1/sqrt5) - 0.01", ess_status(reports.at(0), 0), "ESS");
  log.equal("D at phi = arcsin(1/sqrt5) + 0.01", ess_status(reports.at(1), 0), "NOT_NE");
  const json& grid = ess_report(reports.at(2), 0);
  log.equal("D against the full grid", grid.at("ess_status").get<std::string>(), "NOT_NE");
  const double wphi = grid.at("witness").at("mutant").at(1).get<double>();
  log.check(wphi > kPhiC, "invading witness has phi = " + fmt(wphi) + " > arcsin(1/sqrt5)");

  const EWLStrategy d = EWLStrategy::defect();
  auto c2 = [](int i) { return std::pow(std::cos(theta_at(i) / 2), 2); };
  auto s2 = [](int i) { return std::pow(std::sin(theta_at(i) / 2), 2); };
  auto u = [](int i, int j) { return EWLStrategy(theta_at(i), phi_at(j)); };
  check_display(log, "P(D,U(theta,phi)) = 5cos^2(phi)cos^2(theta/2) + sin^2(theta/2)",
                max_dev_2d(101, 51, [&](int i, int j) {
                  return pd_payoff(d, u(i, j)) -
                         (5 * std::pow(std::cos(phi_at(j)), 2) * c2(i) + s2(i));
                }));
  check_display(log, "P(U(theta,phi),D) = 5sin^2(phi)cos^2(theta/2) + sin^2(theta/2)",
                max_dev_2d(101, 51, [&](int i, int j) {
                  return pd_payoff(u(i, j), d) -
                         (5 * std::pow(std::sin(phi_at(j)), 2) * c2(i) + s2(i));
                }));
  check_display(log, "P(U(theta,phi),U(theta,phi)) three-term form",
                max_dev_2d(101, 51, [&](int i, int j) {
                  const double phi = phi_at(j);
                  const double ch = std::cos(theta_at(i) / 2);
                  const double sh = std::sin(theta_at(i) / 2);
                  const double want =
                      3 * std::pow(std::cos(2 * phi) * ch * ch, 2) +
                      5 * ch * ch * sh * sh * std::pow(std::sin(phi) - std::cos(phi), 2) +
                      std::pow(std::sin(2 * phi) * ch * ch + sh * sh, 2);
                  return pd_payoff(u(i, j), u(i, j)) - want;
                }));

  // At phi = phi_c the first condition ties; the second must then decide.
  double worst_second = 1e300, worst_tie = 0.0;
  for (int i = 1; i < 100; ++i) {
    const EWLStrategy m(theta_at(i), kPhiC);
    worst_tie = std::max(worst_tie, std::abs(pd_payoff(d, d) - pd_payoff(m, d)));
    worst_second = std::min(worst_second, pd_payoff(d, m) - pd_payoff(m, m));
  }
  log.check(worst_tie <= kTol, "P(D,D) = P(U(theta,phi_c),D) on the threshold");
  log.check(worst_second > 0, "P(D,U) > P(U,U) on the threshold (min margin " +
                                  fmt(worst_second) + ")");

  double worst_fitness = 1e300;
  const SymmetricPayoffFn f = ewl_fn(pd_config());
  for (double t : kSampledThetas) {
    const auto [wd, wu] = fitness_pair(f, {kPi, 0.0}, {t, kPhiC - 0.01}, kHighFrequency);
    worst_fitness = std::min(worst_fitness, wd - wu);
  }
  log.check(worst_fitness > 0, "W(D) > W(U(theta,phi)) below the threshold at F_D = " +
                                   fmt(kHighFrequency));
}

std::vector<NamedConfig> case_c_configs() {
  json c = ewl_pd_base("Q against two-parameter mutants");
  c["candidates"] = {"Q"};
  c["analyses"] = {"payoff", "ess", "ne_scan"};
  c["profiles"] = json::array();
  for (const char* pair : {"QQ", "DD", "QD", "DQ"}) {
    c["profiles"].push_back(json::array({std::string(1, pair[0]), std::string(1, pair[1])}));
  }
  return {{"quantum-incumbent", c}};
}

void case_c_check(const std::vector<json>& reports, CaseLog& log) {
  const json& r = reports.at(0);
  log.near("P(Q,Q)", payoff_at(r, 0, 0), 3.0, kTol);
  log.near("P(D,D)", payoff_at(r, 1, 0), 1.0, kTol);
  log.near("P(Q,D)", payoff_at(r, 2, 0), 5.0, kTol);
  log.near("P(D,Q)", payoff_at(r, 3, 0), 0.0, kTol);
  log.equal("Q against the two-parameter grid", ess_status(r, 0), "ESS");
  const json& clusters = analysis(r, "ne_scan").at("symmetric").at("clusters");
  log.check(clusters.size() == 1, "symmetric NE scan finds " + std::to_string(clusters.size()) +
                                      " cluster(s), expected 1");
  if (!clusters.empty()) {
    const json& rep = clusters[0].at("representative");
    log.check(std::abs(rep[0].get<double>()) <= kTol &&
                  std::abs(rep[1].get<double>() - kPi / 2) <= kTol,
              "the NE cluster sits at Q = (0, pi/2)");
  }

  const EWLStrategy q = EWLStrategy::q_hat();
  auto u = [](int i, int j) { return EWLStrategy(theta_at(i), phi_at(j)); };
  auto head = [](int i, int j) {
    return (3 - 2 * std::pow(std::cos(phi_at(j)), 2)) * std::pow(std::cos(theta_at(i) / 2), 2);
  };
  check_display(log, "P(U(theta,phi),Q) = [3 - 2cos^2(phi)]cos^2(theta/2)",
                max_dev_2d(101, 51, [&](int i, int j) { return pd_payoff(u(i, j), q) - head(i, j); }));
  check_display(log, "P(Q,U(theta,phi)) = [3 - 2cos^2(phi)]cos^2(theta/2) + 5sin^2(theta/2)",
                max_dev_2d(101, 51, [&](int i, int j) {
                  return pd_payoff(q, u(i, j)) -
                         (head(i, j) + 5 * std::pow(std::sin(theta_at(i) / 2), 2));
                }));

  double worst_first = 1e300, worst_fitness = 1e300;
  const SymmetricPayoffFn f = ewl_fn(pd_config());
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= 50; ++j) {
      if (i == 0 && j == 50) continue;
      worst_first = std::min(worst_first, 3.0 - pd_payoff(u(i, j), q));
      const auto [wq, wu] = fitness_pair(f, {0.0, kPi / 2}, {theta_at(i), phi_at(j)},
                                         kHighFrequency);
      worst_fitness = std::min(worst_fitness, wq - wu);
    }
  }
  log.check(worst_first > 0, "P(Q,Q) > P(U,Q) for every grid mutant (min margin " +
                                 fmt(worst_first) + ")");
  log.check(worst_fitness > 0, "W(Q) > W(U) at F_Q = " + fmt(kHighFrequency));
}

// ---------------------------------------------------------------------------
// Entanglement and evolutionary stability

json entangled_game_config(double gamma) {
  return {{"label", "s* = (pi/2, pi/4) at gamma = " + fmt(gamma)},
          {"scheme", "EWL"},
          {"game", {{"pd", {2, 0, 0, 2}}}},
          {"initial_state", {{"gamma", gamma}}},
          {"candidates", {{kPi / 2, kPi / 4}}},
          {"analyses", {"payoff", "ess"}}};
}

std::vector<NamedConfig> entanglement_configs() {
  json classical = {{"label", "classical mixed NE p* = 1/2"},
                    {"scheme", "CLASSICAL"},
                    {"game", {{"symmetric", {2, 0, 0, 2}}}},
                    {"candidates", {0.5}},
                    {"analyses", {"payoff", "ess"}}};
  return {{"gamma-0", entangled_game_config(0.0)},
          {"gamma-pi-2", entangled_game_config(kPi / 2)},
          {"classical", classical}};
}

void entanglement_check(const std::vector<json>& reports, CaseLog& log) {
  const json& g0 = reports.at(0);
  const json& g1 = reports.at(1);
  log.near("P(s*,s*) at gamma = 0", payoff_at(g0, 0, 0), 1.0, kTol);
  log.check(ess_report(g0, 0).at("is_ne").get<bool>(), "s* is a NE at gamma = 0");
  log.equal("s* at gamma = 0", ess_status(g0, 0), "NE_NOT_ESS");
  log.near("P(s*,s*) at gamma = pi/2", payoff_at(g1, 0, 0), 2.0, kTol);
  log.check(ess_report(g1, 0).at("is_ne").get<bool>(), "s* is a NE at gamma = pi/2");
  log.check(ess_report(g1, 0).at("is_strict").get<bool>(), "s* is a strict NE at gamma = pi/2");
  log.equal("s* at gamma = pi/2", ess_status(g1, 0), "ESS");
  log.near("classical P(1/2,1/2) = (r+t)/2", payoff_at(reports.at(2), 0, 0), 1.0, kTol);
  log.equal("classical p* = 1/2", ess_status(reports.at(2), 0), "NE_NOT_ESS");

  const double rt = 2.0;
  double closed = 0.0, neqg = 0.0, second_pub = 0.0, second_ok = 0.0;
  for (double gamma : {0.0, kPi / 8, kPi / 4, 3 * kPi / 8, kPi / 2}) {
    const EWLConfig cfg(Bimatrix2::from_roles({2, 0, 0, 2}), gamma);
    auto p = [&](double ta, double pa, double tb, double pb) {
      return ewl_payoffs(cfg, EWLStrategy(ta, pa), EWLStrategy(tb, pb)).first;
    };
    for (int i = 0; i <= 10; ++i) {
      for (int j = 0; j <= 5; ++j) {
        for (int k = 0; k <= 10; ++k) {
          for (int l = 0; l <= 5; ++l) {
            const EWLStrategy a(kPi * i / 10, kPi / 2 * j / 5), b(kPi * k / 10, kPi / 2 * l / 5);
            closed = std::max(closed, std::abs(ewl_payoffs(cfg, a, b).first -
                                               ewl_symmetric_payoff_closed(cfg, a, b)));
          }
        }
      }
    }
    const double ts = kPi / 2, ps = kPi / 4;
    for (int i = 0; i <= 100; ++i) {
      for (int j = 0; j <= 50; ++j) {
        const double t = theta_at(i), ph = phi_at(j);
        const double sg = std::sin(gamma);
        neqg = std::max(neqg, std::abs((p(ts, ps, ts, ps) - p(t, ph, ts, ps)) -
                                       0.5 * rt * sg * (1 - std::sin(ph + kPi / 4) * std::sin(t))));
        const double tail =
            0.5 * rt * sg * std::sin(t) * (std::sin(ph + kPi / 4) - std::sin(t) * std::sin(2 * ph));
        const double lhs = p(ts, ps, t, ph) - p(t, ph, t, ph);
        second_pub = std::max(second_pub, std::abs(lhs - (-rt * std::pow(std::cos(t), 2) + tail)));
        second_ok = std::max(second_ok, std::abs(lhs - (-0.5 * rt * std::pow(std::cos(t), 2) + tail)));
      }
    }
  }
  check_display(log, "closed-form P(sA,sB) for s = t, r = u", closed);
  check_display(log, "P(s*,s*) - P(s,s*) = (r-t)/2 sin(gamma){1 - sin(phi+pi/4)sin(theta)}", neqg);
  published_display(log, "P(s*,s) - P(s,s) with leading term -(r-t)cos^2(theta)", second_pub);
  check_display(log, "P(s*,s) - P(s,s) with leading term -(r-t)cos^2(theta)/2", second_ok);

  const Bimatrix2 g = Bimatrix2::symmetric(2, 0, 0, 2);
  auto pc = [&](double x, double y) {
    return mixed_payoff_bimatrix(g, MixedStrategy1(x), MixedStrategy1(y)).first;
  };
  double diff = 0.0, diff1 = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double x = i / 20.0;
    for (int k = 0; k <= 20; ++k) {
      const double ps = k / 20.0;
      diff = std::max(diff, std::abs((pc(ps, ps) - pc(x, ps)) - (ps - x) * rt * (2 * ps - 1)));
    }
    diff1 = std::max(diff1, std::abs((pc(0.5, x) - pc(x, x)) - rt * (2 * x * (1 - x) - 0.5)));
  }
  check_display(log, "classical P(p*,p*) - P(p,p*) = (p*-p)(r-t)(2p*-1)", diff);
  check_display(log, "classical P(1/2,p) - P(p,p) = (r-t){2p(1-p) - 1/2}", diff1);
}

// ---------------------------------------------------------------------------
// Battle of the Sexes

struct NePoint {
  double p, q;
};

/// Every expected point is found once and nothing else is found.
void check_ne_set(CaseLog& log, const std::string& what, const json& found,
                  const std::vector<NePoint>& expected, double tol) {
  std::vector<bool> used(found.size(), false);
  bool ok = found.size() == expected.size();
  for (const NePoint& e : expected) {
    bool hit = false;
    for (std::size_t k = 0; k < found.size(); ++k) {
      if (!used[k] && std::abs(found[k].at("p").get<double>() - e.p) <= tol &&
          std::abs(found[k].at("q").get<double>() - e.q) <= tol) {
        used[k] = hit = true;
        break;
      }
    }
    ok = ok && hit;
  }
  std::string listing;
  for (const json& f : found) {
    listing += " (" + fmt(f.at("p").get<double>()) + ", " + fmt(f.at("q").get<double>()) + ")";
  }
  log.check(ok, what + ":" + listing);
}

constexpr double kBosA = 3, kBosB = 2, kBosG = 1, kBsq = 0.3;

json bos_config(const std::string& label, const std::string& scheme, const json& state,
                const std::vector<NePoint>& candidates) {
  json c = {{"label", label},
            {"scheme", scheme},
            {"game", {{"battle_of_sexes", {kBosA, kBosB, kBosG}}}},
            {"analyses", {"ne_scan", "ess"}}};
  if (!state.is_null()) c["initial_state"] = state;
  json cands = json::array();
  for (const NePoint& n : candidates) cands.push_back(pair_json(n.p, n.q));
  c["candidates"] = cands;
  return c;
}

std::vector<NePoint> bos_classical_ne() {
  const double den = kBosA + kBosB - 2 * kBosG;
  return {{0, 0}, {1, 1}, {(kBosA - kBosG) / den, (kBosB - kBosG) / den}};
}

std::vector<NePoint> bos_diagonal_ne() {
  const double den = kBosA + kBosB - 2 * kBosG, a2 = 1 - kBsq, b2 = kBsq;
  return {{1, 1},
          {0, 0},
          {((kBosA - kBosG) * a2 + (kBosB - kBosG) * b2) / den,
           ((kBosA - kBosG) * b2 + (kBosB - kBosG) * a2) / den}};
}

std::vector<NePoint> bos_anti_ne() {
  const double den = kBosA + kBosB - 2 * kBosG, a2 = 1 - kBsq, b2 = kBsq;
  const double m = (kBosA * a2 + kBosB * b2 - kBosG) / den;
  return {{m, m}, {1, 0}, {0, 1}};
}

NePoint bos_anti_published() {
  const double den = kBosA + kBosB - kBosG, a2 = 1 - kBsq, b2 = kBsq;
  return {(kBosB * a2 + kBosA * b2 - kBosG) / den, (kBosA * a2 + kBosB * b2 - kBosG) / den};
}

std::vector<NamedConfig> bos_three_configs() {
  return {{"classical", bos_config("classical BoS", "CLASSICAL", nullptr, bos_classical_ne())},
          {"diagonal", bos_config("BoS with a|S1S1> + b|S2S2>", "MW2",
                                  {{"bsq", kBsq}, {"pairing", "DIAGONAL"}}, bos_diagonal_ne())}};
}

void bos_three_check(const std::vector<json>& reports, CaseLog& log) {
  const std::vector<std::string> want = {"ESS", "ESS", "NE_NOT_ESS"};
  const std::vector<std::string> names = {"classical", "|b|^2 = 0.3"};
  const std::vector<std::vector<NePoint>> sets = {bos_classical_ne(), bos_diagonal_ne()};
  for (std::size_t c = 0; c < 2; ++c) {
    const json& ne = analysis(reports[c], "ne_scan").at("bimatrix").at("equilibria");
    check_ne_set(log, names[c] + " NE set", ne, sets[c], 1e-6);
    for (std::size_t k = 0; k < 3; ++k) {
      const NePoint& n = sets[c][k];
      log.equal(names[c] + " (" + fmt(n.p) + ", " + fmt(n.q) + ")", ess_status(reports[c], k),
                want[k]);
    }
  }
}

std::vector<NamedConfig> bos_anti_configs() {
  std::vector<NePoint> cands = bos_anti_ne();
  cands.push_back(bos_anti_published());
  return {{"anti", bos_config("BoS with a|S1S2> + b|S2S1>", "MW2",
                              {{"bsq", kBsq}, {"pairing", "ANTI"}}, cands)}};
}

void bos_anti_check(const std::vector<json>& reports, CaseLog& log) {
  const json& r = reports.at(0);
  const std::vector<NePoint> ne = bos_anti_ne();
  const json& found = analysis(r, "ne_scan").at("bimatrix").at("equilibria");
  check_ne_set(log, "NE set with the anti-diagonal state", found, ne, 1e-6);
  log.equal("interior NE", ess_status(r, 0), "NE_NOT_ESS");
  log.equal("(1,0)", ess_status(r, 1), "ESS");
  log.equal("(0,1)", ess_status(r, 2), "ESS");

  const InitState2 init = InitState2::from_bsq(kBsq, Pairing::kAnti);
  const Bimatrix2 g = Bimatrix2::battle_of_sexes(kBosA, kBosB, kBosG);
  const double a2 = 1 - kBsq, b2 = kBsq, s = kBosA + kBosB - 2 * kBosG;
  auto dev_of = [&](auto want) {
    return max_dev_2d(21, 21, [&](int i, int j) {
      const double p = i / 20.0, q = j / 20.0;
      const auto got = mw_payoffs_2(g, init, MixedStrategy1(p), MixedStrategy1(q));
      return want(p, q, got);
    });
  };
  check_display(log, "anti-diagonal P_A(p,q)", dev_of([&](double p, double q, auto got) {
                  return got.first - (p * (-q * s + kBosA * a2 + kBosB * b2 - kBosG) +
                                      q * (kBosA * b2 + kBosB * a2 - kBosG) + kBosG);
                }));
  published_display(log, "anti-diagonal P_B(p,q) with q{-p(.) + beta|a|^2 + alpha|b|^2 - gamma}",
                    dev_of([&](double p, double q, auto got) {
                      return got.second - (q * (-p * s + kBosB * a2 + kBosA * b2 - kBosG) +
                                           p * (kBosB * b2 + kBosA * a2 - kBosG) + kBosG);
                    }));
  check_display(log, "anti-diagonal P_B(p,q) with q{-p(.) + alpha|a|^2 + beta|b|^2 - gamma}",
                dev_of([&](double p, double q, auto got) {
                  return got.second - (q * (-p * s + kBosA * a2 + kBosB * b2 - kBosG) +
                                       p * (kBosA * b2 + kBosB * a2 - kBosG) + kBosG);
                }));

  const NePoint pub = bos_anti_published();
  const std::string pub_status = ess_status(r, 3);
  if (pub_status == "NOT_NE") {
    log.info("MISMATCH published interior NE (" + fmt(pub.p) + ", " + fmt(pub.q) +
             ") is not a NE; the indifference point is p = q = "
             "(alpha|a|^2 + beta|b|^2 - gamma)/(alpha + beta - 2gamma)");
  } else {
    log.check(true, "published interior NE verdict " + pub_status);
  }
  std::size_t ess_count = 0;
  for (std::size_t k = 0; k < 3; ++k) ess_count += ess_status(r, k) == "ESS";
  if (found.size() != 1 || ess_count != 0) {
    log.info("MISMATCH published claim of exactly one NE and no ESS: found " +
             std::to_string(found.size()) + " NE of which " + std::to_string(ess_count) +
             " are ESS");
  }
}

// ---------------------------------------------------------------------------
// Asymmetric switchovers

json asym_config(const std::string& label, const json& cells, double bsq) {
  return {{"label", label},
          {"scheme", "MW2"},
          {"game", {{"cells", cells}}},
          {"initial_state", {{"bsq", bsq}, {"pairing", "DIAGONAL"}}},
          {"candidates", {pair_json(0, 0)}},
          {"analyses", {"ess"}}};
}

const json kSwitchOffCells = {{{1, 1}, {1, 2}}, {{2, 1}, {3, 2}}};
const json kSwitchOnCells = {{{2, 1}, {1, 0}}, {{1, 0}, {1, 0}}};

Bimatrix2 cells_game(const json& cells) {
  Bimatrix2::Cells c{};
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) c[i][j] = {cells[i][j][0].get<double>(), cells[i][j][1].get<double>()};
  }
  return Bimatrix2(c);
}

/// General diagonal-state payoff display for an arbitrary bimatrix.
double general_display_dev(const Bimatrix2& g) {
  double worst = 0.0;
  for (double bsq : {0.0, 0.3, 0.5, 1.0}) {
    const InitState2 init = InitState2::from_bsq(bsq);
    const double a2 = 1 - bsq, b2 = bsq;
    worst = std::max(worst, max_dev_2d(11, 11, [&](int i, int j) {
      const double p = i / 10.0, q = j / 10.0;
      const auto got = mw_payoffs_2(g, init, MixedStrategy1(p), MixedStrategy1(q));
      double dev = 0.0;
      for (int who = 0; who < 2; ++who) {
        auto v = [&](int r, int c) { return who == 0 ? g.row_payoff(r, c) : g.col_payoff(r, c); };
        const double want = v(0, 0) * (p * q * a2 + (1 - p) * (1 - q) * b2) +
                            v(0, 1) * (p * (1 - q) * a2 + q * (1 - p) * b2) +
                            v(1, 0) * (p * (1 - q) * b2 + q * (1 - p) * a2) +
                            v(1, 1) * (p * q * b2 + (1 - p) * (1 - q) * a2);
        dev = std::max(dev, std::abs((who == 0 ? got.first : got.second) - want));
      }
      return dev;
    }));
  }
  return worst;
}

std::vector<NamedConfig> switch_off_configs() {
  return {{"classical", asym_config("(1,1)(1,2)/(2,1)(3,2), |b|^2 = 0", kSwitchOffCells, 0.0)},
          {"entangled", asym_config("(1,1)(1,2)/(2,1)(3,2), |b|^2 = 1/2", kSwitchOffCells, 0.5)}};
}

void switch_off_check(const std::vector<json>& reports, CaseLog& log) {
  log.check(ess_report(reports.at(0), 0).at("is_ne").get<bool>(), "(0,0) is a NE at |b|^2 = 0");
  log.equal("(0,0) at |b|^2 = 0", ess_status(reports.at(0), 0), "ESS");
  log.check(ess_report(reports.at(1), 0).at("is_ne").get<bool>(), "(0,0) is a NE at |b|^2 = 1/2");
  log.equal("(0,0) at |b|^2 = 1/2", ess_status(reports.at(1), 0), "NE_NOT_ESS");

  const Bimatrix2 g = cells_game(kSwitchOffCells);
  check_display(log, "diagonal-state payoffs P_A, P_B", general_display_dev(g));
  const double b1 = g.row_payoff(0, 1), s1 = g.row_payoff(1, 1), g1 = g.row_payoff(1, 0),
               a1 = g.row_payoff(0, 0);
  const double g2 = g.col_payoff(1, 0), s2 = g.col_payoff(1, 1), b2 = g.col_payoff(0, 1),
               a2 = g.col_payoff(0, 0);
  double dev = 0.0;
  for (double bsq : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    const InitState2 init = InitState2::from_bsq(bsq);
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      auto pay = [&](double p, double q) {
        return mw_payoffs_2(g, init, MixedStrategy1(p), MixedStrategy1(q));
      };
      const double da = pay(0, 0).first - pay(x, 0).first;
      const double db = pay(0, 0).second - pay(0, x).second;
      dev = std::max(dev, std::abs(da + x * ((b1 - s1) + bsq * ((g1 - a1) - (b1 - s1)))));
      dev = std::max(dev, std::abs(db + x * ((g2 - s2) + bsq * ((b2 - a2) - (g2 - s2)))));
    }
  }
  check_display(log, "(0,0) deviation differences", dev);
}

std::vector<NamedConfig> switch_on_configs() {
  return {{"classical", asym_config("(2,1)(1,0)/(1,0)(1,0), |b|^2 = 0", kSwitchOnCells, 0.0)},
          {"entangled", asym_config("(2,1)(1,0)/(1,0)(1,0), |b|^2 = 1/2", kSwitchOnCells, 0.5)}};
}

void switch_on_check(const std::vector<json>& reports, CaseLog& log) {
  log.equal("(0,0) at |b|^2 = 0", ess_status(reports.at(0), 0), "NE_NOT_ESS");
  log.equal("(0,0) at |b|^2 = 1/2", ess_status(reports.at(1), 0), "ESS");
  const Bimatrix2 g = cells_game(kSwitchOnCells);
  check_display(log, "diagonal-state payoffs P_A, P_B", general_display_dev(g));
  double dev = 0.0;
  for (double bsq : {0.0, 0.2, 0.5, 0.8, 1.0}) {
    const InitState2 init = InitState2::from_bsq(bsq);
    for (int i = 0; i <= 10; ++i) {
      const double x = i / 10.0;
      auto pay = [&](double p, double q) {
        return mw_payoffs_2(g, init, MixedStrategy1(p), MixedStrategy1(q));
      };
      dev = std::max(dev, std::abs(pay(0, 0).first - pay(x, 0).first - x * bsq));
      dev = std::max(dev, std::abs(pay(0, 0).second - pay(0, x).second - x * bsq));
    }
  }
  check_display(log, "P_A(0,0) - P_A(p,0) = p|b|^2 and P_B(0,0) - P_B(0,q) = q|b|^2", dev);
}

// ---------------------------------------------------------------------------
// Symmetric 2x2 thresholds

const std::vector<double> kThresholdAsq = {1.0, 0.8, 0.26, 0.25, 0.24, 0.5, 0.74, 0.75, 0.76, 0.0};

double sym_mixed(double asq) { return (4 * asq - 1) / 2; }

std::vector<NamedConfig> thresholds_configs() {
  std::vector<NamedConfig> out;
  for (double asq : kThresholdAsq) {
    json cands = {0.0, 1.0};
    const double m = sym_mixed(asq);
    if (m > 0 && m < 1) cands.push_back(m);
    out.push_back({"asq-" + fmt(asq),
                   {{"label", "alpha=1 beta=0 gamma=2 delta=3 at |a|^2 = " + fmt(asq)},
                    {"scheme", "MW2"},
                    {"game", {{"symmetric", {1, 0, 2, 3}}}},
                    {"initial_state", {{"bsq", 1.0 - asq}, {"pairing", "DIAGONAL"}}},
                    {"candidates", cands},
                    {"analyses", {"ess"}},
                    {"grid", {{"step", 1e-3}}}}});
  }
  for (double bsq : {0.0, 0.3, 0.7, 1.0}) {
    out.push_back({"gamma-eq-alpha-bsq-" + fmt(bsq),
                   {{"label", "gamma = alpha, beta < delta at |b|^2 = " + fmt(bsq)},
                    {"scheme", "MW2"},
                    {"game", {{"symmetric", {1, 0, 1, 2}}}},
                    {"initial_state", {{"bsq", bsq}, {"pairing", "DIAGONAL"}}},
                    {"candidates", {0.0, 1.0}},
                    {"analyses", {"ess"}},
                    {"grid", {{"step", 1e-3}}}}});
  }
  return out;
}

void thresholds_check(const std::vector<json>& reports, CaseLog& log) {
  for (std::size_t k = 0; k < kThresholdAsq.size(); ++k) {
    const double asq = kThresholdAsq[k];
    const json& r = reports.at(k);
    const std::string at = " at |a|^2 = " + fmt(asq);
    const std::string p0 = asq > 0.25 ? "ESS" : asq == 0.25 ? "NE_NOT_ESS" : "NOT_NE";
    const std::string p1 = asq < 0.75 ? "ESS" : asq == 0.75 ? "NE_NOT_ESS" : "NOT_NE";
    log.equal("p = 0" + at, ess_status(r, 0), p0);
    log.equal("p = 1" + at, ess_status(r, 1), p1);
    const double m = sym_mixed(asq);
    if (m > 0 && m < 1) {
      log.equal("mixed p* = " + fmt(m) + at, ess_status(r, 2), "NE_NOT_ESS");
    }
    log.check(ess_report(r, 0).at("grid_step").get<double>() == 1e-3,
              "certification grid step 1e-3" + at);
  }
  for (std::size_t k = 0; k < 4; ++k) {
    const json& r = reports.at(kThresholdAsq.size() + k);
    const double bsq = r.at("config").at("initial_state").at("bsq").get<double>();
    const std::string at = " at |b|^2 = " + fmt(bsq);
    log.check(ess_report(r, 0).at("is_ne").get<bool>() && ess_report(r, 1).at("is_ne").get<bool>(),
              "gamma = alpha class: p = 0 and p = 1 are NE" + at);
    if (bsq == 0.0) log.check(ess_status(r, 1) != "ESS", "gamma = alpha class: p = 1 not ESS" + at);
    if (bsq == 1.0) log.check(ess_status(r, 0) != "ESS", "gamma = alpha class: p = 0 not ESS" + at);
  }

  const Bimatrix2 g = Bimatrix2::symmetric(1, 0, 2, 3);
  for (double asq : {1.0, 0.5}) {
    const SymmetricNeCandidates c = mw_symmetric_ne_closed(g, InitState2::from_bsq(1 - asq));
    log.check(c.mixed && std::abs(*c.mixed - sym_mixed(asq)) <= kTol &&
                  c.mixed_in_range == (asq == 0.5),
              "closed-form mixed candidate (4|a|^2 - 1)/2 = " + fmt(sym_mixed(asq)) +
                  (c.mixed_in_range ? " in range" : " out of range"));
  }
  const double asq = 0.5, ps = sym_mixed(asq);
  const InitState2 init = InitState2::from_bsq(1 - asq);
  double dev = 0.0;
  for (int i = 0; i <= 20; ++i) {
    const double p = i / 20.0;
    auto pay = [&](double x, double y) {
      return mw_payoffs_2(g, init, MixedStrategy1(x), MixedStrategy1(y)).first;
    };
    const double delta = p - ps;
    dev = std::max(dev, std::abs((pay(ps, p) - pay(p, p)) + delta * delta * (3.0 - 1.0)));
  }
  check_display(log, "P(p*,p) - P(p,p) = -delta^2{(delta-beta) - (gamma-alpha)}", dev);
}

// ---------------------------------------------------------------------------
// Three players

ThreePlayerSymmetricSpec spec3(double a1, double a2, double a3, double a5, double a6, double a8) {
  ThreePlayerSymmetricSpec s;
  s.alpha1 = a1;
  s.alpha2 = a2;
  s.alpha3 = a3;
  s.alpha5 = a5;
  s.alpha6 = a6;
  s.alpha8 = a8;
  return s;
}

json spec3_json(const ThreePlayerSymmetricSpec& s) {
  return {{"alpha1", s.alpha1}, {"alpha2", s.alpha2}, {"alpha3", s.alpha3},
          {"alpha5", s.alpha5}, {"alpha6", s.alpha6}, {"alpha8", s.alpha8}};
}

const ThreePlayerSymmetricSpec kClassA = spec3(1, 1, 0, -1, 0.5, 0);
const ThreePlayerSymmetricSpec kClassB = spec3(0, 1, 2, 0, 0, 1);
const ThreePlayerSymmetricSpec kBothPure = spec3(1, 0, 0, -1, 0, 0);
const ThreePlayerSymmetricSpec kDoubleRoot = spec3(1, 0, -2, 4, 0, 0);
const double kRootLow = (3 - std::sqrt(3.0)) / 6, kRootHigh = (3 + std::sqrt(3.0)) / 6;

json mw3_config(const std::string& label, const ThreePlayerSymmetricSpec& s, double bsq,
                const json& candidates, const json& analyses) {
  return {{"label", label},
          {"scheme", "MW3"},
          {"game", spec3_json(s)},
          {"initial_state", {{"bsq", bsq}}},
          {"candidates", candidates},
          {"analyses", analyses}};
}

const std::vector<double> kClassABsq = {0.0, 0.3, 0.7, 1.0};

std::vector<NamedConfig> three_player_configs() {
  std::vector<NamedConfig> out;
  for (double bsq : kClassABsq) {
    out.push_back({"class-a-" + fmt(bsq),
                   mw3_config("sigma = 0, omega < 0, eta <= 0 at |b|^2 = " + fmt(bsq), kClassA,
                              bsq, {0.0}, {"ess"})});
  }
  out.push_back({"class-b", mw3_config("sigma = omega, eta > sigma at |b|^2 = 1/2", kClassB, 0.5,
                                       {kRootLow, kRootHigh}, {"ne_scan", "ess"})});
  out.push_back({"both-pure", mw3_config("both pure strategies at |a|^2 = |b|^2", kBothPure, 0.5,
                                         {0.0, 1.0}, {"ess"})});
  out.push_back({"double-root", mw3_config("sigma = 1, omega = 4, eta = -2 at |b|^2 = 0",
                                           kDoubleRoot, 0.0, json::array(), {"ne_scan"})});
  return out;
}

void three_player_check(const std::vector<json>& reports, CaseLog& log) {
  for (std::size_t k = 0; k < kClassABsq.size(); ++k) {
    const std::string at = " at |b|^2 = " + fmt(kClassABsq[k]);
    log.check(ess_report(reports[k], 0).at("is_ne").get<bool>(), "class A: p = 0 is a NE" + at);
    if (kClassABsq[k] == 1.0) {
      log.check(ess_status(reports[k], 0) != "ESS", "class A: p = 0 is not an ESS" + at);
    }
  }
  const json& b = reports.at(kClassABsq.size());
  const json& tp = analysis(b, "ne_scan").at("three_player");
  log.check(tp.at("identically_zero").get<bool>(),
            "class B at |b|^2 = 1/2: the NE quadratic vanishes identically");
  log.equal("class B mixed NE p = " + fmt(kRootLow), ess_status(b, 0), "NE_NOT_ESS");
  log.equal("class B mixed NE p = " + fmt(kRootHigh), ess_status(b, 1), "NE_NOT_ESS");
  const ThreePlayerRoots rb = three_player_mixed_ne(kClassB, 0.3);
  log.check(rb.roots.size() == 2 && std::abs(rb.roots[0] - kRootLow) <= 1e-9 &&
                std::abs(rb.roots[1] - kRootHigh) <= 1e-9,
            "class B roots at |b|^2 = 0.3 are (3 -+ sqrt3)/6");

  const json& both = reports.at(kClassABsq.size() + 1);
  log.equal("p = 0 at |a|^2 = |b|^2", ess_status(both, 0), "ESS");
  log.equal("p = 1 at |a|^2 = |b|^2", ess_status(both, 1), "ESS");

  const json& dr = analysis(reports.at(kClassABsq.size() + 2), "ne_scan").at("three_player");
  const json& roots = dr.at("roots");
  log.check(roots.size() == 1 && std::abs(roots[0].get<double>() - 2.0 / 3) <= 1e-9,
            "sigma = 1, omega = 4, eta = -2 gives the double root p = 2/3");

  std::mt19937_64 rng(20241015);
  std::uniform_real_distribution<double> coef(-3.0, 3.0), unit(0.0, 1.0);
  double worst = 0.0;
  std::size_t root_count = 0;
  for (int draw = 0; draw < 100; ++draw) {
    const ThreePlayerSymmetricSpec s =
        spec3(coef(rng), coef(rng), coef(rng), coef(rng), coef(rng), coef(rng));
    const double bsq = unit(rng);
    const ThreePlayerRoots r = three_player_mixed_ne(s, bsq);
    if (r.identically_zero) continue;
    const InitState3 init = InitState3::from_bsq(bsq);
    for (double ps : r.roots) {
      ++root_count;
      const MixedStrategy1 x(ps);
      const double base = mw_payoffs_3(s, init, x, x, x)[0];
      for (int i = 0; i <= 10; ++i) {
        worst = std::max(worst,
                         std::abs(base - mw_payoffs_3(s, init, MixedStrategy1(i / 10.0), x, x)[0]));
      }
    }
  }
  log.check(worst <= 1e-8, "P(p*,p*,p*) = P(p,p*,p*) at " + std::to_string(root_count) +
                               " roots from 100 random draws (max deviation " + fmt(worst) + ")");
}

// ---------------------------------------------------------------------------
// Rock-Scissors-Paper

constexpr double kEps = -0.5;
const double kThird = 1.0 / 3.0;

json rsp_config(const std::string& label, const std::string& preset) {
  return {{"label", label},
          {"scheme", "RSP"},
          {"game", {{"rsp_epsilon", kEps}}},
          {"initial_state", {{"preset", preset}}},
          {"candidates", {{kThird, kThird}}},
          {"analyses", {"payoff", "ess", "invasion", "replicate"}},
          {"mutants", {{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {0.5, 0.2}, {0.2, 0.2}}}};
}

/// max |[P(x*,y) - P(y,y)] - form(x, y)| with x = p* - p, y = p1* - p1 on a simplex grid.
template <typename F>
double second_condition_dev(const QutritInitState& init, F form) {
  const Matrix3x3Pair g = Matrix3x3Pair::rock_scissors_paper(kEps);
  const MixedStrategy2 star(kThird, kThird);
  double worst = 0.0;
  for (int i = 0; i <= 20; ++i) {
    for (int j = 0; i + j <= 20; ++j) {
      const MixedStrategy2 m(i / 20.0, j / 20.0);
      const double lhs = rsp_payoffs(g, init, star, m).first - rsp_payoffs(g, init, m, m).first;
      worst = std::max(worst, std::abs(lhs - form(kThird - i / 20.0, kThird - j / 20.0)));
    }
  }
  return worst;
}

void rsp_common(const json& r, const QutritInitState& init, CaseLog& log) {
  const auto [gp, gp1] = rsp_gradients(Matrix3x3Pair::rock_scissors_paper(kEps), init,
                                       MixedStrategy2(kThird, kThird));
  log.check(std::abs(gp) < kTol && std::abs(gp1) < kTol,
            "(1/3,1/3) is stationary (gradients " + fmt(gp) + ", " + fmt(gp1) + ")");
  log.check(ess_report(r, 0).at("is_ne").get<bool>(), "(1/3,1/3) is a NE");
}

std::vector<NamedConfig> rsp_classical_configs() {
  return {{"classical", rsp_config("RSP epsilon = -1/2 with |11>", "classical")}};
}

void rsp_classical_check(const std::vector<json>& reports, CaseLog& log) {
  const json& r = reports.at(0);
  rsp_common(r, QutritInitState::classical(), log);
  log.equal("(1/3,1/3) with |11>", ess_status(r, 0), "NE_NOT_ESS");
  check_display(log, "second-condition difference 2eps(x^2 + y^2 + xy)",
                second_condition_dev(QutritInitState::classical(), [](double x, double y) {
                  return 2 * kEps * (x * x + y * y + x * y);
                }));
  bool invaded = false;
  for (const json& row : analysis(r, "invasion").at("results")) {
    const json& resists = row.at("resists");
    invaded = invaded || std::none_of(resists.begin(), resists.end(),
                                      [](const json& b) { return b.get<bool>(); });
  }
  log.check(invaded, "some listed mutant invades at every tested share");
  const std::string probe = analysis(r, "replicate").at("probes").at(0).at("verdict");
  log.check(probe != "RETURNS", "replicator probe does not return to (1/3,1/3) (" + probe + ")");
}

std::vector<NamedConfig> rsp_entangled_configs() {
  return {{"entangled",
           rsp_config("RSP epsilon = -1/2 with (|12>+|21>+|13>+|31>)/2", "symmetric_entangled")}};
}

void rsp_entangled_check(const std::vector<json>& reports, CaseLog& log) {
  const json& r = reports.at(0);
  const QutritInitState init = QutritInitState::symmetric_entangled();
  rsp_common(r, init, log);
  log.equal("(1/3,1/3) with the entangled state", ess_status(r, 0), "ESS");
  published_display(log, "second-condition difference -eps{(x+y)^2 + (x^2+y^2)}",
                    second_condition_dev(init, [](double x, double y) {
                      return -kEps * ((x + y) * (x + y) + x * x + y * y);
                    }));
  check_display(log, "second-condition difference -eps(x^2 + xy + y^2)",
                second_condition_dev(init, [](double x, double y) {
                  return -kEps * (x * x + x * y + y * y);
                }));
  bool all_resist = true;
  for (const json& row : analysis(r, "invasion").at("results")) {
    for (const json& b : row.at("resists")) all_resist = all_resist && b.get<bool>();
  }
  log.check(all_resist, "every listed mutant is repelled at every tested share");
  const std::string probe = analysis(r, "replicate").at("probes").at(0).at("verdict");
  log.equal("replicator probe from (1/3,1/3)", probe, "RETURNS");
}

std::vector<NamedConfig> rsp_sum_configs() {
  json c = {{"label", "RSP payoff sums on a tactic grid"},
            {"scheme", "RSP"},
            {"game", {{"rsp_epsilon", kEps}}},
            {"initial_state", {{"preset", "symmetric_entangled"}}},
            {"analyses", {"payoff"}}};
  json profiles = json::array();
  for (int i = 0; i <= 4; ++i) {
    for (int j = 0; i + j <= 4; ++j) {
      for (int k = 0; k <= 4; ++k) {
        for (int l = 0; k + l <= 4; ++l) {
          profiles.push_back({{i / 4.0, j / 4.0}, {k / 4.0, l / 4.0}});
        }
      }
    }
  }
  c["profiles"] = profiles;
  json cl = c;
  cl["label"] = "RSP payoff sums on a tactic grid, |11>";
  cl["initial_state"] = {{"preset", "classical"}};
  return {{"entangled", c}, {"classical", cl}};
}

void rsp_sum_check(const std::vector<json>& reports, CaseLog& log) {
  const json& qu = analysis(reports.at(0), "payoff").at("profiles");
  const json& cl = analysis(reports.at(1), "payoff").at("profiles");
  double sum_dev = 0.0, cl_dev = 0.0;
  for (std::size_t k = 0; k < qu.size(); ++k) {
    const json& prof = qu[k].at("profile");
    const double p = prof[0][0], p1 = prof[0][1], q = prof[1][0], q1 = prof[1][1];
    const double squ = qu[k].at("payoffs")[0].get<double>() + qu[k].at("payoffs")[1].get<double>();
    const double scl = cl[k].at("payoffs")[0].get<double>() + cl[k].at("payoffs")[1].get<double>();
    sum_dev = std::max(sum_dev, std::abs(squ + (0.5 * scl + kEps)));
    cl_dev = std::max(cl_dev, std::abs(scl + 2 * kEps * ((1 - p - p1) * (1 - q - q1) + p1 * q1 + p * q)));
  }
  check_display(log, "(P_A+P_B)_cl = -2eps{(1-p-p1)(1-q-q1) + p1 q1 + p q} over " +
                         std::to_string(qu.size()) + " profiles",
                cl_dev);
  check_display(log, "(P_A+P_B)_qu = -{(P_A+P_B)_cl/2 + eps}", sum_dev);

  const Matrix3x3Pair g = Matrix3x3Pair::rock_scissors_paper(kEps);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double dual = 0.0;
  for (int k = 0; k < 2000; ++k) {
    auto draw = [&] {
      double a = unit(rng), b = unit(rng);
      if (a + b > 1) {
        a = 1 - a;
        b = 1 - b;
      }
      return MixedStrategy2(a, b);
    };
    const MixedStrategy2 a = draw(), b = draw();
    const QutritInitState& init =
        k % 2 ? QutritInitState::symmetric_entangled() : QutritInitState::classical();
    dual = std::max(dual, std::abs(rsp_payoffs(g, init, a, b).first -
                                   rsp_payoff_factors(g, init, a, b).alice_payoff()));
  }
  log.check(dual <= 1e-10, "trace and factor-product payoffs agree (max deviation " + fmt(dual) + ")");
}

std::vector<CatalogCase> build_catalog() {
  return {
      {"pd-ewl-caseA", "EWL PD: one-parameter mutants cannot invade D", case_a_configs(),
       case_a_check},
      {"pd-ewl-caseB", "EWL PD: two-parameter mutants invade D above arcsin(1/sqrt5)",
       case_b_configs(), case_b_check},
      {"pd-ewl-caseC", "EWL PD: Q is the unique NE and an ESS", case_c_configs(), case_c_check},
      {"ewl-entanglement-ess", "entanglement turns s* = (pi/2, pi/4) into an ESS",
       entanglement_configs(), entanglement_check},
      {"bos-three-ne", "BoS: three NE, the pure ones ESS, classically and with a|00> + b|11>",
       bos_three_configs(), bos_three_check},
      {"bos-antisymmetric-no-ess", "BoS with a|01> + b|10>", bos_anti_configs(), bos_anti_check},
      {"asym-switch-off", "(0,0) stops being an ESS at |b|^2 = 1/2", switch_off_configs(),
       switch_off_check},
      {"asym-switch-on", "(0,0) becomes an ESS at |b|^2 = 1/2", switch_on_configs(),
       switch_on_check},
      {"sym2x2-thresholds", "symmetric 2x2: ESS thresholds in |a|^2", thresholds_configs(),
       thresholds_check},
      {"three-player-classes", "three-player symmetric game: NE roots and ESS classes",
       three_player_configs(), three_player_check},
      {"rsp-classical", "RSP with |11>: (1/3,1/3) is a NE but not an ESS",
       rsp_classical_configs(), rsp_classical_check},
      {"rsp-entangled", "RSP with the entangled state: (1/3,1/3) becomes an ESS",
       rsp_entangled_configs(), rsp_entangled_check},
      {"rsp-payoff-sum", "RSP payoff sums, classical and quantum", rsp_sum_configs(),
       rsp_sum_check},
  };
}

}  // namespace

void CaseLog::check(bool ok, const std::string& text) {
  lines_.push_back({ok ? LineKind::kPass : LineKind::kFail, text});
}

void CaseLog::near(const std::string& what, double got, double want, double tol) {
  check(std::abs(got - want) <= tol,
        what + " = " + fmt(got) + " (expected " + fmt(want) + " +- " + fmt(tol) + ")");
}

void CaseLog::equal(const std::string& what, const std::string& got, const std::string& want) {
  check(got == want, what + ": " + got + (got == want ? "" : " (expected " + want + ")"));
}

void CaseLog::info(const std::string& text) { lines_.push_back({LineKind::kInfo, text}); }

bool CaseLog::passed() const {
  return std::none_of(lines_.begin(), lines_.end(),
                      [](const CheckLine& l) { return l.kind == LineKind::kFail; });
}

const std::vector<CatalogCase>& catalog() {
  static const std::vector<CatalogCase> cases = build_catalog();
  return cases;
}

const CatalogCase* find_case(const std::string& id) {
  for (const CatalogCase& c : catalog()) {
    if (c.id == id) return &c;
  }
  return nullptr;
}

CaseResult reproduce_case(const CatalogCase& c) {
  const auto start = std::chrono::steady_clock::now();
  CaseLog log;
  try {
    std::vector<json> reports;
    for (const NamedConfig& n : c.configs) reports.push_back(run_scenario(n.config).report);
    c.check(reports, log);
  } catch (const std::exception& e) {
    log.check(false, std::string("exception: ") + e.what());
  }
  CaseResult r;
  r.id = c.id;
  r.lines = log.lines();
  r.passed = log.passed();
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string format_line(const std::string& id, const CheckLine& line) {
  const char* tag = line.kind == LineKind::kPass ? "PASS" : line.kind == LineKind::kFail ? "FAIL"
                                                                                         : "INFO";
  return std::string(tag) + "  " + id + "  " + line.text;
}

}  // namespace qgess
