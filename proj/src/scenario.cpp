#include "qgess/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <optional>
#include <set>

#include "qgess/ewl.hpp"
#include "qgess/games.hpp"
#include "qgess/mw.hpp"
#include "qgess/replicator.hpp"
#include "qgess/stability.hpp"

#ifndef QGESS_VERSION
#define QGESS_VERSION "0.0.0"
#endif

namespace qgess {

using json = nlohmann::json;

namespace {

constexpr double kPi = std::numbers::pi;

enum class Scheme { kEwl, kMw2, kMw3, kRsp, kClassical };

const char* scheme_name(Scheme s) {
  switch (s) {
    case Scheme::kEwl: return "EWL";
    case Scheme::kMw2: return "MW2";
    case Scheme::kMw3: return "MW3";
    case Scheme::kRsp: return "RSP";
    case Scheme::kClassical: return "CLASSICAL";
  }
  return "?";
}

[[noreturn]] void fail(const std::string& ptr, const std::string& msg) {
  throw ConfigError(ptr.empty() ? "/" : ptr, msg);
}

std::string child(const std::string& ptr, const std::string& key) { return ptr + "/" + key; }
std::string child(const std::string& ptr, std::size_t index) {
  return ptr + "/" + std::to_string(index);
}

void allow_keys(const json& obj, std::initializer_list<const char*> keys, const std::string& ptr) {
  if (!obj.is_object()) fail(ptr, "expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    const bool known = std::any_of(keys.begin(), keys.end(),
                                   [&](const char* k) { return it.key() == k; });
    if (!known) fail(child(ptr, it.key()), "unknown field");
  }
}

const json& require(const json& obj, const char* key, const std::string& ptr) {
  if (!obj.contains(key)) fail(child(ptr, key), "missing required field");
  return obj.at(key);
}

double as_number(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ptr, "must be finite");
  return v;
}

std::vector<double> as_numbers(const json& j, const std::string& ptr, std::size_t n) {
  if (!j.is_array() || (n != 0 && j.size() != n)) {
    fail(ptr, n == 0 ? "expected an array of numbers"
                     : "expected an array of " + std::to_string(n) + " numbers");
  }
  std::vector<double> out;
  for (std::size_t k = 0; k < j.size(); ++k) out.push_back(as_number(j[k], child(ptr, k)));
  return out;
}

Complex as_complex(const json& j, const std::string& ptr) {
  if (j.is_number()) return as_number(j, ptr);
  const auto v = as_numbers(j, ptr, 2);
  return {v[0], v[1]};
}

json strategy_json(const StrategySpace& space, const Strategy& s) {
  if (space.dimension() == 1) return s[0];
  return json::array({s[0], s[1]});
}

template <typename F>
auto guarded(const std::string& ptr, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    fail(ptr, e.what());
  }
}

// ---------------------------------------------------------------------------

struct Candidate {
  bool pair = false;
  Strategy s{};                       // symmetric candidate
  std::pair<double, double> pq{};     // bimatrix pair candidate
};

struct Scenario {
  Scheme scheme = Scheme::kClassical;
  std::optional<Bimatrix2> bimatrix;
  std::optional<EWLConfig> ewl;
  std::optional<InitState2> init2;
  std::optional<ThreePlayerSymmetricSpec> spec3;
  std::optional<InitState3> init3;
  std::optional<Matrix3x3Pair> game3;
  std::optional<QutritInitState> qutrit;

  std::vector<Candidate> candidates;
  std::vector<std::string> analyses;
  std::vector<json> profiles;  // scheme-specific parsed profiles
  std::optional<std::vector<Strategy>> mutants;
  std::vector<double> epsilons = {0.1, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001};

  StabilityOptions opt;
  double scan_step = 0.0;
  EvolveOptions evo{1e-3, 200000, 1000};
  double delta = 0.05;

  StrategySpace space = StrategySpace::interval();
  bool symmetric_contest = false;
};

Scheme parse_scheme(const json& j) {
  if (!j.is_string()) fail("/scheme", "expected a string");
  const std::string s = j.get<std::string>();
  if (s == "EWL") return Scheme::kEwl;
  if (s == "MW2") return Scheme::kMw2;
  if (s == "MW3") return Scheme::kMw3;
  if (s == "RSP") return Scheme::kRsp;
  if (s == "CLASSICAL") return Scheme::kClassical;
  fail("/scheme", "must be one of EWL, MW2, MW3, RSP, CLASSICAL");
}

Bimatrix2 parse_bimatrix(const json& g, const std::string& ptr) {
  allow_keys(g, {"pd", "cells", "symmetric", "battle_of_sexes"}, ptr);
  if (g.size() != 1) fail(ptr, "give exactly one of pd, cells, symmetric, battle_of_sexes");
  if (g.contains("pd")) {
    const auto v = as_numbers(g["pd"], child(ptr, "pd"), 4);
    return Bimatrix2::from_roles({v[0], v[1], v[2], v[3]});
  }
  if (g.contains("symmetric")) {
    const auto v = as_numbers(g["symmetric"], child(ptr, "symmetric"), 4);
    return Bimatrix2::symmetric(v[0], v[1], v[2], v[3]);
  }
  if (g.contains("battle_of_sexes")) {
    const auto v = as_numbers(g["battle_of_sexes"], child(ptr, "battle_of_sexes"), 3);
    return Bimatrix2::battle_of_sexes(v[0], v[1], v[2]);
  }
  const std::string cp = child(ptr, "cells");
  const json& c = g["cells"];
  if (!c.is_array() || c.size() != 2) fail(cp, "expected 2 rows");
  Bimatrix2::Cells cells{};
  for (std::size_t i = 0; i < 2; ++i) {
    if (!c[i].is_array() || c[i].size() != 2) fail(child(cp, i), "expected 2 cells");
    for (std::size_t j = 0; j < 2; ++j) {
      const auto v = as_numbers(c[i][j], child(child(cp, i), j), 2);
      cells[i][j] = {v[0], v[1]};
    }
  }
  return Bimatrix2(cells);
}

std::array<std::array<double, 3>, 3> parse_3x3(const json& j, const std::string& ptr) {
  if (!j.is_array() || j.size() != 3) fail(ptr, "expected 3 rows");
  std::array<std::array<double, 3>, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto row = as_numbers(j[i], child(ptr, i), 3);
    for (std::size_t k = 0; k < 3; ++k) out[i][k] = row[k];
  }
  return out;
}

Strategy parse_ewl_strategy(const json& j, const std::string& ptr) {
  if (j.is_string()) {
    const std::string n = j.get<std::string>();
    if (n == "C") return {0.0, 0.0};
    if (n == "D") return {kPi, 0.0};
    if (n == "Q") return {0.0, kPi / 2};
    fail(ptr, "named EWL strategies are C, D and Q");
  }
  const auto v = as_numbers(j, ptr, 2);
  guarded(ptr, [&] { return EWLStrategy(v[0], v[1]); });
  return StrategySpace::ewl_rect().canonical({v[0], v[1]});
}

Strategy parse_symmetric_strategy(const Scenario& sc, const json& j, const std::string& ptr) {
  switch (sc.scheme) {
    case Scheme::kEwl: return parse_ewl_strategy(j, ptr);
    case Scheme::kRsp: {
      const auto v = as_numbers(j, ptr, 2);
      guarded(ptr, [&] { return MixedStrategy2(v[0], v[1]); });
      return StrategySpace::simplex2().canonical({v[0], v[1]});
    }
    default: {
      const double p = as_number(j, ptr);
      guarded(ptr, [&] { return MixedStrategy1(p); });
      return StrategySpace::interval().canonical({p, 0.0});
    }
  }
}

void parse_game_and_state(Scenario& sc, const json& cfg) {
  const json& g = require(cfg, "game", "");
  const bool has_state = cfg.contains("initial_state");
  const json empty = json::object();
  const json& st = has_state ? cfg["initial_state"] : empty;
  if (has_state && !st.is_object()) fail("/initial_state", "expected an object");

  switch (sc.scheme) {
    case Scheme::kClassical:
      if (has_state) fail("/initial_state", "CLASSICAL takes no initial state");
      sc.bimatrix = guarded("/game", [&] { return parse_bimatrix(g, "/game"); });
      break;
    case Scheme::kEwl: {
      sc.bimatrix = guarded("/game", [&] { return parse_bimatrix(g, "/game"); });
      if (!has_state) fail("/initial_state", "missing required field (gamma)");
      allow_keys(st, {"gamma"}, "/initial_state");
      const double gamma = as_number(require(st, "gamma", "/initial_state"), "/initial_state/gamma");
      sc.ewl = guarded("/initial_state/gamma", [&] { return EWLConfig(*sc.bimatrix, gamma); });
      break;
    }
    case Scheme::kMw2: {
      sc.bimatrix = guarded("/game", [&] { return parse_bimatrix(g, "/game"); });
      if (!has_state) fail("/initial_state", "missing required field");
      allow_keys(st, {"a", "b", "bsq", "pairing"}, "/initial_state");
      Pairing pairing = Pairing::kDiagonal;
      if (st.contains("pairing")) {
        const json& pj = st["pairing"];
        if (pj == "DIAGONAL") {
          pairing = Pairing::kDiagonal;
        } else if (pj == "ANTI") {
          pairing = Pairing::kAnti;
        } else {
          fail("/initial_state/pairing", "must be DIAGONAL or ANTI");
        }
      }
      if (st.contains("bsq")) {
        if (st.contains("a") || st.contains("b")) fail("/initial_state", "give bsq or a/b, not both");
        const double bsq = as_number(st["bsq"], "/initial_state/bsq");
        sc.init2 = guarded("/initial_state/bsq", [&] { return InitState2::from_bsq(bsq, pairing); });
      } else {
        const Complex a = as_complex(require(st, "a", "/initial_state"), "/initial_state/a");
        const Complex b = as_complex(require(st, "b", "/initial_state"), "/initial_state/b");
        sc.init2 = guarded("/initial_state", [&] { return InitState2(a, b, pairing); });
      }
      break;
    }
    case Scheme::kMw3: {
      allow_keys(g, {"alpha1", "alpha2", "alpha3", "alpha5", "alpha6", "alpha8"}, "/game");
      ThreePlayerSymmetricSpec spec;
      spec.alpha1 = as_number(require(g, "alpha1", "/game"), "/game/alpha1");
      spec.alpha2 = as_number(require(g, "alpha2", "/game"), "/game/alpha2");
      spec.alpha3 = as_number(require(g, "alpha3", "/game"), "/game/alpha3");
      spec.alpha5 = as_number(require(g, "alpha5", "/game"), "/game/alpha5");
      spec.alpha6 = as_number(require(g, "alpha6", "/game"), "/game/alpha6");
      spec.alpha8 = as_number(require(g, "alpha8", "/game"), "/game/alpha8");
      sc.spec3 = spec;
      if (!has_state) fail("/initial_state", "missing required field");
      allow_keys(st, {"a", "b", "bsq"}, "/initial_state");
      if (st.contains("bsq")) {
        if (st.contains("a") || st.contains("b")) fail("/initial_state", "give bsq or a/b, not both");
        const double bsq = as_number(st["bsq"], "/initial_state/bsq");
        sc.init3 = guarded("/initial_state/bsq", [&] { return InitState3::from_bsq(bsq); });
      } else {
        const Complex a = as_complex(require(st, "a", "/initial_state"), "/initial_state/a");
        const Complex b = as_complex(require(st, "b", "/initial_state"), "/initial_state/b");
        sc.init3 = guarded("/initial_state", [&] { return InitState3(a, b); });
      }
      break;
    }
    case Scheme::kRsp: {
      allow_keys(g, {"rsp_epsilon", "alpha", "beta"}, "/game");
      Matrix3x3Pair m;
      if (g.contains("rsp_epsilon")) {
        if (g.contains("alpha") || g.contains("beta")) {
          fail("/game", "give rsp_epsilon or alpha/beta, not both");
        }
        m = Matrix3x3Pair::rock_scissors_paper(as_number(g["rsp_epsilon"], "/game/rsp_epsilon"));
      } else {
        m.alpha = parse_3x3(require(g, "alpha", "/game"), "/game/alpha");
        if (g.contains("beta")) {
          m.beta = parse_3x3(g["beta"], "/game/beta");
        } else {
          for (int i = 0; i < 3; ++i) {
            for (int k = 0; k < 3; ++k) m.beta[i][k] = m.alpha[k][i];
          }
        }
      }
      sc.game3 = m;
      if (!has_state) fail("/initial_state", "missing required field");
      allow_keys(st, {"preset", "c"}, "/initial_state");
      if (st.contains("preset") == st.contains("c")) {
        fail("/initial_state", "give exactly one of preset, c");
      }
      if (st.contains("preset")) {
        const json& p = st["preset"];
        if (p == "classical") {
          sc.qutrit = QutritInitState::classical();
        } else if (p == "symmetric_entangled") {
          sc.qutrit = QutritInitState::symmetric_entangled();
        } else {
          fail("/initial_state/preset", "must be classical or symmetric_entangled");
        }
      } else {
        const json& c = st["c"];
        if (!c.is_array() || c.size() != 3) fail("/initial_state/c", "expected 3 rows");
        QutritInitState::Coefficients coeff{};
        for (std::size_t i = 0; i < 3; ++i) {
          const std::string rp = child("/initial_state/c", i);
          if (!c[i].is_array() || c[i].size() != 3) fail(rp, "expected 3 entries");
          for (std::size_t k = 0; k < 3; ++k) coeff[i][k] = as_complex(c[i][k], child(rp, k));
        }
        sc.qutrit = guarded("/initial_state/c", [&] { return QutritInitState(coeff); });
      }
      break;
    }
  }
}

bool effective_symmetric(const Bimatrix2& g) {
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      if (std::abs(g.col_payoff(i, j) - g.row_payoff(j, i)) > 1e-12) return false;
    }
  }
  return true;
}

void decide_space(Scenario& sc) {
  switch (sc.scheme) {
    case Scheme::kEwl:
      sc.space = StrategySpace::ewl_rect();
      sc.symmetric_contest = true;
      break;
    case Scheme::kClassical:
      sc.symmetric_contest = effective_symmetric(*sc.bimatrix);
      break;
    case Scheme::kMw2:
      sc.symmetric_contest = effective_symmetric(mw_effective_bimatrix(*sc.bimatrix, *sc.init2));
      break;
    case Scheme::kMw3:
      sc.symmetric_contest = true;
      break;
    case Scheme::kRsp:
      sc.space = StrategySpace::simplex2();
      sc.symmetric_contest = sc.game3->is_symmetric() && sc.qutrit->symmetric_play();
      break;
  }
}

void parse_candidates(Scenario& sc, const json& cfg) {
  if (!cfg.contains("candidates")) return;
  const json& c = cfg["candidates"];
  if (!c.is_array()) fail("/candidates", "expected an array");
  for (std::size_t k = 0; k < c.size(); ++k) {
    const std::string ptr = child("/candidates", k);
    Candidate cand;
    if (c[k].is_object()) {
      if (sc.scheme != Scheme::kMw2 && sc.scheme != Scheme::kClassical) {
        fail(ptr, "strategy pairs are only available for MW2 and CLASSICAL");
      }
      allow_keys(c[k], {"p", "q"}, ptr);
      const double p = as_number(require(c[k], "p", ptr), child(ptr, "p"));
      const double q = as_number(require(c[k], "q", ptr), child(ptr, "q"));
      guarded(ptr, [&] { return std::pair(MixedStrategy1(p), MixedStrategy1(q)); });
      cand.pair = true;
      cand.pq = {p, q};
    } else {
      if (!sc.symmetric_contest) {
        fail(ptr, "the contest is not symmetric; give the pair as {\"p\": ..., \"q\": ...}");
      }
      cand.s = parse_symmetric_strategy(sc, c[k], ptr);
    }
    sc.candidates.push_back(cand);
  }
}

json parse_profile(const Scenario& sc, const json& j, const std::string& ptr) {
  switch (sc.scheme) {
    case Scheme::kEwl: {
      if (!j.is_array() || j.size() != 2) fail(ptr, "expected [strategy_A, strategy_B]");
      const Strategy a = parse_ewl_strategy(j[0], child(ptr, 0));
      const Strategy b = parse_ewl_strategy(j[1], child(ptr, 1));
      return json::array({json::array({a[0], a[1]}), json::array({b[0], b[1]})});
    }
    case Scheme::kRsp: {
      if (!j.is_array() || j.size() != 2) fail(ptr, "expected [[p, p1], [q, q1]]");
      json out = json::array();
      for (std::size_t k = 0; k < 2; ++k) {
        const auto v = as_numbers(j[k], child(ptr, k), 2);
        guarded(child(ptr, k), [&] { return MixedStrategy2(v[0], v[1]); });
        out.push_back(json::array({v[0], v[1]}));
      }
      return out;
    }
    case Scheme::kMw3: {
      const auto v = as_numbers(j, ptr, 3);
      for (std::size_t k = 0; k < 3; ++k) guarded(child(ptr, k), [&] { return MixedStrategy1(v[k]); });
      return json::array({v[0], v[1], v[2]});
    }
    default: {
      const auto v = as_numbers(j, ptr, 2);
      for (std::size_t k = 0; k < 2; ++k) guarded(child(ptr, k), [&] { return MixedStrategy1(v[k]); });
      return json::array({v[0], v[1]});
    }
  }
}

std::vector<Strategy> parse_mutants(const Scenario& sc, const json& j) {
  std::vector<Strategy> out;
  if (j.is_array()) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      out.push_back(parse_symmetric_strategy(sc, j[k], child("/mutants", k)));
    }
    return out;
  }
  if (!j.is_object() || sc.scheme != Scheme::kEwl) {
    fail("/mutants", "expected an array of strategies (generator objects are EWL only)");
  }
  allow_keys(j, {"theta_count", "phi", "phi_count", "exclude_theta_pi"}, "/mutants");
  const double tn = as_number(require(j, "theta_count", "/mutants"), "/mutants/theta_count");
  if (tn < 2 || tn != std::floor(tn)) fail("/mutants/theta_count", "must be an integer >= 2");
  std::vector<double> phis;
  if (j.contains("phi") == j.contains("phi_count")) fail("/mutants", "give exactly one of phi, phi_count");
  if (j.contains("phi")) {
    phis = as_numbers(j["phi"], "/mutants/phi", 0);
  } else {
    const double pn = as_number(j["phi_count"], "/mutants/phi_count");
    if (pn < 2 || pn != std::floor(pn)) fail("/mutants/phi_count", "must be an integer >= 2");
    for (int k = 0; k < static_cast<int>(pn); ++k) phis.push_back(kPi / 2 * k / (pn - 1));
  }
  bool exclude_pi = false;
  if (j.contains("exclude_theta_pi")) {
    if (!j["exclude_theta_pi"].is_boolean()) fail("/mutants/exclude_theta_pi", "expected a boolean");
    exclude_pi = j["exclude_theta_pi"].get<bool>();
  }
  const int n = static_cast<int>(tn);
  for (double phi : phis) {
    for (int k = 0; k < n; ++k) {
      if (exclude_pi && k == n - 1) continue;
      const double theta = kPi * k / (n - 1);
      guarded("/mutants", [&] { return EWLStrategy(theta, phi); });
      out.push_back(StrategySpace::ewl_rect().canonical({theta, phi}));
    }
  }
  return out;
}

void parse_settings(Scenario& sc, const json& cfg) {
  sc.scan_step = sc.scheme == Scheme::kEwl ? 0.05 : 0.01;
  if (cfg.contains("grid")) {
    const json& g = cfg["grid"];
    allow_keys(g, {"step", "refine_step", "refine", "scan_step"}, "/grid");
    auto step = [&](const char* key, double& dst) {
      if (!g.contains(key)) return;
      const double v = as_number(g[key], child("/grid", key));
      if (!(v > 0.0 && v <= 0.5)) fail(child("/grid", key), "must lie in (0, 0.5]");
      dst = v;
    };
    step("step", sc.opt.grid_step);
    step("refine_step", sc.opt.refine_step);
    step("scan_step", sc.scan_step);
    if (g.contains("refine")) {
      if (!g["refine"].is_boolean()) fail("/grid/refine", "expected a boolean");
      sc.opt.refine = g["refine"].get<bool>();
    }
  }
  if (cfg.contains("tolerances")) {
    const json& t = cfg["tolerances"];
    allow_keys(t, {"eq", "strict", "ne"}, "/tolerances");
    auto tol = [&](const char* key, double& dst) {
      if (!t.contains(key)) return;
      const double v = as_number(t[key], child("/tolerances", key));
      if (!(v >= 0.0 && v < 1e-2)) fail(child("/tolerances", key), "must lie in [0, 0.01)");
      dst = v;
    };
    tol("eq", sc.opt.tol_eq);
    tol("strict", sc.opt.tol_strict);
    tol("ne", sc.opt.tol_ne);
  }
  if (cfg.contains("invasion")) {
    const json& inv = cfg["invasion"];
    allow_keys(inv, {"epsilons"}, "/invasion");
    if (inv.contains("epsilons")) sc.epsilons = as_numbers(inv["epsilons"], "/invasion/epsilons", 0);
    for (std::size_t k = 0; k < sc.epsilons.size(); ++k) {
      const double e = sc.epsilons[k];
      if (!(e > 0.0 && e < 1.0) || (k > 0 && !(e < sc.epsilons[k - 1]))) {
        fail(child("/invasion/epsilons", k), "epsilons must be strictly decreasing in (0, 1)");
      }
    }
  }
  if (cfg.contains("replicate")) {
    const json& r = cfg["replicate"];
    allow_keys(r, {"dt", "steps", "delta", "sample_every"}, "/replicate");
    if (r.contains("dt")) {
      sc.evo.dt = as_number(r["dt"], "/replicate/dt");
      if (!(sc.evo.dt > 0.0 && sc.evo.dt <= 0.1)) fail("/replicate/dt", "must lie in (0, 0.1]");
    }
    auto count = [&](const char* key, long& dst) {
      if (!r.contains(key)) return;
      const double v = as_number(r[key], child("/replicate", key));
      if (v < 1 || v > 1e7 || v != std::floor(v)) {
        fail(child("/replicate", key), "must be an integer in [1, 1e7]");
      }
      dst = static_cast<long>(v);
    };
    count("steps", sc.evo.steps);
    count("sample_every", sc.evo.sample_every);
    if (r.contains("delta")) {
      sc.delta = as_number(r["delta"], "/replicate/delta");
      if (!(sc.delta > 0.0 && sc.delta <= 0.1)) fail("/replicate/delta", "must lie in (0, 0.1]");
    }
  }
}

Scenario parse_scenario(const json& cfg) {
  if (!cfg.is_object()) fail("/", "config must be a JSON object");
  allow_keys(cfg,
             {"label", "scheme", "game", "initial_state", "candidates", "analyses", "profiles",
              "mutants", "invasion", "grid", "tolerances", "replicate"},
             "");
  if (cfg.contains("label") && !cfg["label"].is_string()) fail("/label", "expected a string");
  Scenario sc;
  sc.scheme = parse_scheme(require(cfg, "scheme", ""));
  parse_game_and_state(sc, cfg);
  decide_space(sc);
  parse_settings(sc, cfg);
  parse_candidates(sc, cfg);

  const json& an = require(cfg, "analyses", "");
  if (!an.is_array() || an.empty()) fail("/analyses", "expected a non-empty array");
  static const std::set<std::string> known = {"payoff", "ne_scan", "ess", "invasion", "replicate"};
  for (std::size_t k = 0; k < an.size(); ++k) {
    const std::string ptr = child("/analyses", k);
    if (!an[k].is_string() || !known.count(an[k].get<std::string>())) {
      fail(ptr, "must be one of payoff, ne_scan, ess, invasion, replicate");
    }
    const std::string name = an[k].get<std::string>();
    const bool needs_candidates = name == "ess" || name == "invasion" || name == "replicate";
    if (needs_candidates && sc.candidates.empty()) fail("/candidates", name + " needs candidates");
    if (name == "invasion") {
      if (!sc.space.supports_mixing()) {
        fail(ptr, "invasion is unavailable for EWL: unitaries have no canonical convex mixture");
      }
      if (sc.scheme == Scheme::kMw3) fail(ptr, "invasion is defined for two-player contests");
      if (!cfg.contains("mutants")) fail("/mutants", "invasion needs mutants");
    }
    if (name == "replicate") {
      if (sc.scheme == Scheme::kEwl) {
        fail(ptr, "replicate needs a finite tactic set; EWL strategies form a continuum");
      }
      if (sc.scheme == Scheme::kMw3) fail(ptr, "replicate is defined for two-player contests");
      if (!sc.symmetric_contest) fail(ptr, "replicate needs a symmetric contest");
    }
    sc.analyses.push_back(name);
  }
  for (std::size_t k = 0; k < sc.candidates.size(); ++k) {
    const bool pair_only = std::count(sc.analyses.begin(), sc.analyses.end(), "invasion") ||
                           std::count(sc.analyses.begin(), sc.analyses.end(), "replicate");
    if (sc.candidates[k].pair && pair_only) {
      fail(child("/candidates", k), "invasion and replicate take symmetric candidates");
    }
  }
  if (cfg.contains("profiles")) {
    const json& p = cfg["profiles"];
    if (!p.is_array()) fail("/profiles", "expected an array");
    for (std::size_t k = 0; k < p.size(); ++k) {
      sc.profiles.push_back(parse_profile(sc, p[k], child("/profiles", k)));
    }
  }
  if (cfg.contains("mutants")) {
    if (sc.scheme == Scheme::kMw3 || !sc.symmetric_contest) {
      fail("/mutants", "mutant lists apply to symmetric two-player contests");
    }
    sc.mutants = parse_mutants(sc, cfg["mutants"]);
  }
  return sc;
}

// ---------------------------------------------------------------------------

SymmetricPayoffFn symmetric_fn(const Scenario& sc) {
  switch (sc.scheme) {
    case Scheme::kEwl: {
      const EWLConfig cfg = *sc.ewl;
      return {sc.space, [cfg](const Strategy& x, const Strategy& y) {
                return ewl_payoffs(cfg, EWLStrategy(x[0], x[1]), EWLStrategy(y[0], y[1])).first;
              }};
    }
    case Scheme::kMw2: {
      const Bimatrix2 g = *sc.bimatrix;
      const InitState2 init = *sc.init2;
      return {sc.space, [g, init](const Strategy& x, const Strategy& y) {
                return mw_payoffs_2(g, init, MixedStrategy1(x[0]), MixedStrategy1(y[0])).first;
              }};
    }
    case Scheme::kRsp: {
      const Matrix3x3Pair g = *sc.game3;
      const QutritInitState init = *sc.qutrit;
      return {sc.space, [g, init](const Strategy& x, const Strategy& y) {
                return rsp_payoffs(g, init, MixedStrategy2(x[0], x[1]), MixedStrategy2(y[0], y[1]))
                    .first;
              }};
    }
    case Scheme::kClassical: {
      const Bimatrix2 g = *sc.bimatrix;
      return {sc.space, [g](const Strategy& x, const Strategy& y) {
                return mixed_payoff_bimatrix(g, MixedStrategy1(x[0]), MixedStrategy1(y[0])).first;
              }};
    }
    case Scheme::kMw3: break;
  }
  throw std::logic_error("symmetric_fn: no two-player payoff for this scheme");
}

ThreePlayerPayoffFn three_player_fn(const Scenario& sc) {
  const ThreePlayerSymmetricSpec spec = *sc.spec3;
  const InitState3 init = *sc.init3;
  return {StrategySpace::interval(),
          [spec, init](const Strategy& x, const Strategy& y, const Strategy& z) {
            return mw_payoffs_3(spec, init, MixedStrategy1(x[0]), MixedStrategy1(y[0]),
                                MixedStrategy1(z[0]))[0];
          }};
}

/// (P_A(p, q), P_B(p, q)) for the bimatrix schemes.
std::pair<double, double> pair_payoffs(const Scenario& sc, double p, double q) {
  if (sc.scheme == Scheme::kMw2) {
    return mw_payoffs_2(*sc.bimatrix, *sc.init2, MixedStrategy1(p), MixedStrategy1(q));
  }
  return mixed_payoff_bimatrix(*sc.bimatrix, MixedStrategy1(p), MixedStrategy1(q));
}

json witness_json(const StrategySpace& space, const std::optional<Witness>& w) {
  if (!w) return nullptr;
  return {{"mutant", strategy_json(space, w->mutant)}, {"margin", w->margin}};
}

json report_json(const StrategySpace& space, const EquilibriumReport& r) {
  json out = {{"candidate", strategy_json(space, r.candidate)},
              {"is_ne", r.is_ne},
              {"ne_margin", r.ne_margin},
              {"is_strict", r.is_strict},
              {"witness", witness_json(space, r.witness)},
              {"grid_step", r.grid_step},
              {"refined", r.refined},
              {"mutants_tested", r.mutants_tested}};
  out["ess_status"] = r.ess_status ? json(to_string(*r.ess_status)) : json(nullptr);
  out["second_margin"] = r.second_margin ? json(*r.second_margin) : json(nullptr);
  return out;
}

json asymmetric_json(const AsymmetricReport& r) {
  return {{"candidate", {{"p", r.candidate.first}, {"q", r.candidate.second}}},
          {"is_ne", r.is_ne},
          {"is_strict", r.is_strict},
          {"ess_status", to_string(r.ess_status)},
          {"alice_margin", r.alice_margin},
          {"bob_margin", r.bob_margin},
          {"alice_witness", {{"p", r.alice_witness.mutant[0]}, {"margin", r.alice_witness.margin}}},
          {"bob_witness", {{"q", r.bob_witness.mutant[0]}, {"margin", r.bob_witness.margin}}},
          {"grid_step", r.grid_step}};
}

json candidate_json(const Scenario& sc, const Candidate& c) {
  if (c.pair) return {{"p", c.pq.first}, {"q", c.pq.second}};
  return strategy_json(sc.space, c.s);
}

// ---------------------------------------------------------------------------

json run_payoff(const Scenario& sc) {
  std::vector<json> profiles = sc.profiles;
  if (profiles.empty()) {
    for (const Candidate& c : sc.candidates) {
      if (c.pair) {
        profiles.push_back(json::array({c.pq.first, c.pq.second}));
      } else if (sc.scheme == Scheme::kMw3) {
        profiles.push_back(json::array({c.s[0], c.s[0], c.s[0]}));
      } else if (sc.space.dimension() == 2) {
        const json s = json::array({c.s[0], c.s[1]});
        profiles.push_back(json::array({s, s}));
      } else {
        profiles.push_back(json::array({c.s[0], c.s[0]}));
      }
    }
  }
  json rows = json::array();
  for (const json& p : profiles) {
    json payoffs;
    switch (sc.scheme) {
      case Scheme::kEwl: {
        const auto [a, b] = ewl_payoffs(*sc.ewl, EWLStrategy(p[0][0], p[0][1]),
                                        EWLStrategy(p[1][0], p[1][1]));
        payoffs = json::array({a, b});
        break;
      }
      case Scheme::kRsp: {
        const auto [a, b] = rsp_payoffs(*sc.game3, *sc.qutrit, MixedStrategy2(p[0][0], p[0][1]),
                                        MixedStrategy2(p[1][0], p[1][1]));
        payoffs = json::array({a, b});
        break;
      }
      case Scheme::kMw3: {
        const auto v = mw_payoffs_3(*sc.spec3, *sc.init3, MixedStrategy1(p[0]),
                                    MixedStrategy1(p[1]), MixedStrategy1(p[2]));
        payoffs = json::array({v[0], v[1], v[2]});
        break;
      }
      default: {
        const auto [a, b] = pair_payoffs(sc, p[0], p[1]);
        payoffs = json::array({a, b});
      }
    }
    rows.push_back({{"profile", p}, {"payoffs", payoffs}});
  }
  return {{"analysis", "payoff"}, {"profiles", rows}};
}

json run_ne_scan(const Scenario& sc, std::vector<CsvFile>* csv) {
  json out = {{"analysis", "ne_scan"}};
  if (sc.scheme == Scheme::kMw2 || sc.scheme == Scheme::kClassical) {
    const Bimatrix2 eff =
        sc.scheme == Scheme::kMw2 ? mw_effective_bimatrix(*sc.bimatrix, *sc.init2) : *sc.bimatrix;
    const ClassicalEquilibria eq = classical_equilibria_2x2(eff);
    json list = json::array();
    for (const ClassicalEquilibrium& e : eq.equilibria) {
      list.push_back({{"p", e.p}, {"q", e.q}, {"interior", e.interior},
                      {"grid_verified", e.grid_verified}});
    }
    out["bimatrix"] = {{"equilibria", list}, {"degenerate", eq.degenerate}};
  }
  if (sc.scheme == Scheme::kMw3) {
    const ThreePlayerRoots roots = three_player_mixed_ne(*sc.spec3, sc.init3->b_sq());
    out["three_player"] = {{"roots", roots.roots},
                           {"out_of_range", roots.out_of_range},
                           {"discriminant", roots.discriminant},
                           {"coefficients", {roots.quadratic, roots.linear, roots.constant}},
                           {"linear_fallback", roots.linear_fallback},
                           {"identically_zero", roots.identically_zero}};
    const ThreePlayerPayoffFn f3 = three_player_fn(sc);
    const SymmetricPayoffFn f{StrategySpace::interval(),
                              [&f3](const Strategy& x, const Strategy& y) {
                                return f3.evaluate(x, y, y);
                              }};
    // P(x, y, y) against the population y is the three-player NE test.
    StabilityOptions o = sc.opt;
    o.grid_step = sc.scan_step;
    const NeScanResult scan = ne_scan(f, o);
    json clusters = json::array();
    for (const NeCluster& c : scan.clusters) {
      clusters.push_back({{"representative", c.representative[0]},
                          {"size", c.members.size()},
                          {"min", c.members.front()[0]},
                          {"max", c.members.back()[0]},
                          {"best_margin", c.best_margin}});
    }
    out["symmetric"] = {{"clusters", clusters}, {"degenerate", scan.degenerate},
                        {"grid_step", scan.grid_step}, {"grid_size", scan.grid_size}};
    return out;
  }
  if (sc.symmetric_contest) {
    const SymmetricPayoffFn f = symmetric_fn(sc);
    StabilityOptions o = sc.opt;
    o.grid_step = sc.scan_step;
    const NeScanResult scan = ne_scan(f, o);
    json clusters = json::array();
    std::string rows = "cluster,x1,x2\n";
    for (std::size_t k = 0; k < scan.clusters.size(); ++k) {
      const NeCluster& c = scan.clusters[k];
      clusters.push_back({{"representative", strategy_json(sc.space, c.representative)},
                          {"size", c.members.size()},
                          {"best_margin", c.best_margin}});
      for (const Strategy& m : c.members) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu,%.12g,%.12g\n", k, m[0], m[1]);
        rows += buf;
      }
    }
    out["symmetric"] = {{"clusters", clusters}, {"degenerate", scan.degenerate},
                        {"grid_step", scan.grid_step}, {"grid_size", scan.grid_size}};
    if (csv) csv->push_back({"ne_scan.csv", rows});
  }
  return out;
}

json run_ess(const Scenario& sc) {
  json rows = json::array();
  for (const Candidate& c : sc.candidates) {
    if (c.pair) {
      auto fa = [&](double p, double q) { return pair_payoffs(sc, p, q).first; };
      auto fb = [&](double p, double q) { return pair_payoffs(sc, p, q).second; };
      json r = asymmetric_json(check_asymmetric_ess(fa, fb, c.pq, sc.opt));
      r["mode"] = "bimatrix_strict_ne";
      rows.push_back(r);
    } else if (sc.scheme == Scheme::kMw3) {
      json r = report_json(StrategySpace::interval(), check_three_player_ess(three_player_fn(sc), c.s, sc.opt));
      r["mode"] = "three_player_grid";
      rows.push_back(r);
    } else if (sc.mutants) {
      json r = report_json(sc.space, check_symmetric_ess_against(symmetric_fn(sc), c.s, *sc.mutants, sc.opt));
      r["mode"] = "listed_mutants";
      rows.push_back(r);
    } else {
      json r = report_json(sc.space, check_symmetric_ess(symmetric_fn(sc), c.s, sc.opt));
      r["mode"] = "grid";
      rows.push_back(r);
    }
  }
  return {{"analysis", "ess"}, {"reports", rows}};
}

json run_invasion(const Scenario& sc) {
  const SymmetricPayoffFn f = symmetric_fn(sc);
  json rows = json::array();
  for (const Candidate& c : sc.candidates) {
    for (const Strategy& m : *sc.mutants) {
      if (sc.space.canonical(m) == c.s) continue;
      const InvasionResult r = check_invasion(f, c.s, {sc.epsilons, m}, sc.opt);
      json margins = r.margin;
      json resists = json::array();
      for (bool b : r.resists) resists.push_back(b);
      rows.push_back({{"candidate", strategy_json(sc.space, c.s)},
                      {"mutant", strategy_json(sc.space, m)},
                      {"epsilon", r.epsilon},
                      {"resists", resists},
                      {"margin", margins},
                      {"barrier", r.barrier ? json(*r.barrier) : json(nullptr)}});
    }
  }
  return {{"analysis", "invasion"}, {"results", rows}};
}

Eigen::MatrixXd tactic_matrix(const Scenario& sc) {
  if (sc.scheme == Scheme::kRsp) {
    const Matrix3x3Pair eff = rsp_effective_game(*sc.game3, *sc.qutrit);
    Eigen::MatrixXd a(3, 3);
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) a(i, j) = eff.alpha[i][j];
    }
    return a;
  }
  const Bimatrix2 eff =
      sc.scheme == Scheme::kMw2 ? mw_effective_bimatrix(*sc.bimatrix, *sc.init2) : *sc.bimatrix;
  Eigen::MatrixXd a(2, 2);
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) a(i, j) = eff.row_payoff(i, j);
  }
  return a;
}

Population population_of(const Scenario& sc, const Strategy& s) {
  if (sc.scheme == Scheme::kRsp) {
    return Population({std::max(0.0, 1.0 - s[0] - s[1]), s[0], s[1]});
  }
  return Population({s[0], 1.0 - s[0]});
}

json run_replicate(const Scenario& sc, std::vector<CsvFile>* csv) {
  const Eigen::MatrixXd a = tactic_matrix(sc);
  json matrix = json::array();
  for (int i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (int j = 0; j < a.cols(); ++j) row.push_back(a(i, j));
    matrix.push_back(row);
  }
  json rows = json::array();
  for (std::size_t k = 0; k < sc.candidates.size(); ++k) {
    const Population pop = population_of(sc, sc.candidates[k].s);
    const ProbeResult r = stability_probe(pop, a, sc.delta, sc.evo);
    json dirs = json::array();
    for (const ProbeDirection& d : r.directions) {
      dirs.push_back({{"strategy", d.strategy},
                      {"skipped", d.skipped},
                      {"terminal_distance", d.terminal_distance},
                      {"verdict", to_string(d.verdict)}});
      if (csv && !d.skipped) {
        std::vector<double> start = pop.freqs();
        for (double& f : start) f *= 1.0 - sc.delta;
        start[d.strategy] += sc.delta;
        const Trajectory t = evolve(Population(start), a, sc.evo);
        csv->push_back({"replicate_c" + std::to_string(k) + "_s" + std::to_string(d.strategy) +
                            ".csv",
                        to_csv(t)});
      }
    }
    rows.push_back({{"candidate", strategy_json(sc.space, sc.candidates[k].s)},
                    {"population", pop.freqs()},
                    {"verdict", to_string(r.verdict)},
                    {"directions", dirs}});
  }
  return {{"analysis", "replicate"},
          {"tactic_payoff_matrix", matrix},
          {"delta", sc.delta},
          {"dt", sc.evo.dt},
          {"steps", sc.evo.steps},
          {"horizon", sc.evo.dt * static_cast<double>(sc.evo.steps)},
          {"probes", rows}};
}

json settings_json(const Scenario& sc) {
  json s = {{"tolerances",
             {{"eq", sc.opt.tol_eq}, {"strict", sc.opt.tol_strict}, {"ne", sc.opt.tol_ne}}},
            {"grid_step", sc.opt.grid_step},
            {"refine", sc.opt.refine},
            {"refine_step", sc.opt.effective_refine_step()},
            {"scan_step", sc.scan_step},
            {"strategy_space", to_string(sc.space.kind())},
            {"symmetric_contest", sc.symmetric_contest},
            {"certification",
             "verdicts hold on the stated finite grid plus local refinement; they are not "
             "proofs over the continuum"}};
  if (std::count(sc.analyses.begin(), sc.analyses.end(), "replicate")) {
    s["replicator"] = {{"dt", sc.evo.dt}, {"steps", sc.evo.steps}, {"delta", sc.delta},
                       {"scope", "finite tactic sets of symmetric two-player contests"}};
  }
  if (std::count(sc.analyses.begin(), sc.analyses.end(), "invasion")) {
    s["invasion_epsilons"] = sc.epsilons;
  }
  return s;
}

}  // namespace

// ---------------------------------------------------------------------------

const char* library_version() { return QGESS_VERSION; }

ConfigError::ConfigError(std::string pointer, const std::string& message)
    : std::runtime_error(pointer + ": " + message), pointer_(std::move(pointer)) {}

json parse_config_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k + 1 < e.byte && k < text.size(); ++k) {
      if (text[k] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ConfigError("line " + std::to_string(line) + ", column " + std::to_string(col),
                      "malformed JSON");
  }
}

ScenarioOutput run_scenario(const json& config, bool with_csv) {
  const Scenario sc = parse_scenario(config);
  ScenarioOutput out;
  std::vector<CsvFile>* csv = with_csv ? &out.csv : nullptr;
  json results = json::array();
  for (const std::string& a : sc.analyses) {
    if (a == "payoff") results.push_back(run_payoff(sc));
    if (a == "ne_scan") results.push_back(run_ne_scan(sc, csv));
    if (a == "ess") results.push_back(run_ess(sc));
    if (a == "invasion") results.push_back(run_invasion(sc));
    if (a == "replicate") results.push_back(run_replicate(sc, csv));
  }
  json candidates = json::array();
  for (const Candidate& c : sc.candidates) candidates.push_back(candidate_json(sc, c));
  out.report = {{"library", {{"name", "qgess"}, {"version", library_version()}}},
                {"config", config},
                {"scheme", scheme_name(sc.scheme)},
                {"candidates", candidates},
                {"settings", settings_json(sc)},
                {"results", results}};
  return out;
}

std::string render_report(const json& report) { return report.dump(2) + "\n"; }

}  // namespace qgess
