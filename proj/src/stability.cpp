#include "qgess/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace qgess {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kSnapTol = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double node(double len, int i, int n) { return len * i / n; }

int divisions(double step) {
  if (!(step > 0.0 && step <= 1.0)) throw std::invalid_argument("grid step must lie in (0, 1]");
  return static_cast<int>(std::lround(1.0 / step));
}

// Mutant bookkeeping shared by the symmetric and three-player checks.
class MutantScan {
 public:
  using Margin = std::function<double(const Strategy&)>;

  MutantScan(const StrategySpace& space, const Strategy& candidate, const StabilityOptions& opt,
             bool check_second, double tie_radius, Margin first, Margin second)
      : space_(space),
        x_(candidate),
        opt_(opt),
        check_second_(check_second),
        tie_radius_(tie_radius),
        first_(std::move(first)),
        second_(std::move(second)) {}

  void visit(const Strategy& raw) {
    const Strategy y = space_.canonical(raw);
    if (y == x_) return;
    ++count_;
    const double d1 = first_(y);
    const bool near = space_.distance(x_, y) <= tie_radius_ * (1.0 + 1e-9);
    if (d1 < min_d1_) {
      min_d1_ = d1;
      ne_witness_ = {y, d1};
    }
    const bool tie1 = std::abs(d1) <= opt_.tol_eq;
    if (!(d1 > opt_.tol_strict) && !(near && tie1)) strict_ = false;
    if (!check_second_) return;

    double effective = d1;
    bool fails = false;
    if (d1 > opt_.tol_strict) {
      // first condition decides
    } else if (tie1) {
      const double d2 = second_(y);
      effective = d2;
      if (!second_min_ || d2 < *second_min_) second_min_ = d2;
      fails = !(d2 > opt_.tol_strict) && !(near && d2 >= -opt_.tol_eq);
    } else {
      fails = true;
    }
    if (fails && (!fail_witness_ || effective < fail_witness_->margin)) {
      fail_witness_ = Witness{y, effective};
    }
    if (!best_witness_ || effective < best_witness_->margin) {
      best_witness_ = Witness{y, effective};
    }
  }

  void visit_all(const std::vector<Strategy>& ys) {
    for (const Strategy& y : ys) visit(y);
  }

  /// Mutant around which refinement is most informative.
  std::optional<Strategy> focus() const {
    if (!is_ne()) return ne_witness_ ? std::optional(ne_witness_->mutant) : std::nullopt;
    if (fail_witness_) return fail_witness_->mutant;
    if (best_witness_) return best_witness_->mutant;
    return ne_witness_ ? std::optional(ne_witness_->mutant) : std::nullopt;
  }

  bool is_ne() const { return count_ == 0 || min_d1_ >= -opt_.tol_ne; }

  EquilibriumReport report(double grid_step, bool refined) const {
    EquilibriumReport r;
    r.candidate = x_;
    r.is_ne = is_ne();
    r.ne_margin = count_ == 0 ? 0.0 : min_d1_;
    r.is_strict = r.is_ne && strict_;
    r.grid_step = grid_step;
    r.refined = refined;
    r.mutants_tested = count_;
    r.second_margin = second_min_;
    if (!check_second_) {
      r.witness = ne_witness_;
      return r;
    }
    if (!r.is_ne) {
      r.ess_status = EssStatus::kNotNe;
      r.witness = ne_witness_;
    } else if (fail_witness_) {
      r.ess_status = EssStatus::kNeNotEss;
      r.witness = fail_witness_;
    } else {
      r.ess_status = EssStatus::kEss;
      r.witness = best_witness_;
    }
    if (r.ess_status == EssStatus::kEss && !r.is_ne) {
      throw std::logic_error("ESS verdict without NE");
    }
    return r;
  }

 private:
  const StrategySpace& space_;
  Strategy x_;
  const StabilityOptions& opt_;
  bool check_second_;
  double tie_radius_;
  Margin first_;
  Margin second_;

  std::size_t count_ = 0;
  double min_d1_ = kInf;
  bool strict_ = true;
  std::optional<double> second_min_;
  std::optional<Witness> ne_witness_;
  std::optional<Witness> fail_witness_;
  std::optional<Witness> best_witness_;
};

std::vector<Strategy> coordinates(const std::vector<GridPoint>& grid) {
  std::vector<Strategy> out;
  out.reserve(grid.size());
  for (const GridPoint& g : grid) out.push_back(g.s);
  return out;
}

EquilibriumReport run_grid_scan(const StrategySpace& space, const Strategy& candidate,
                                const StabilityOptions& opt, bool check_second,
                                MutantScan::Margin first, MutantScan::Margin second) {
  MutantScan scan(space, candidate, opt, check_second, opt.grid_step, std::move(first),
                  std::move(second));
  scan.visit_all(coordinates(space.grid(opt.grid_step)));
  if (opt.refine) {
    const double fine = opt.effective_refine_step();
    scan.visit_all(space.local_grid(candidate, opt.grid_step, fine));
    if (const auto f = scan.focus()) {
      scan.visit_all(space.local_grid(*f, opt.grid_step, fine));
    }
  }
  return scan.report(opt.grid_step, opt.refine);
}

Strategy prepare_candidate(const StrategySpace& space, const Strategy& candidate,
                           const StabilityOptions& opt) {
  if (!space.contains(candidate)) {
    throw std::invalid_argument("candidate lies outside the strategy space");
  }
  return space.snapped(candidate, divisions(opt.grid_step));
}

}  // namespace

// ---------------------------------------------------------------------------

std::string to_string(SpaceKind kind) {
  switch (kind) {
    case SpaceKind::kInterval: return "INTERVAL";
    case SpaceKind::kSimplex2: return "SIMPLEX2";
    case SpaceKind::kEwlRect: return "EWL_RECT";
  }
  return "?";
}

std::string to_string(EssStatus status) {
  switch (status) {
    case EssStatus::kEss: return "ESS";
    case EssStatus::kNeNotEss: return "NE_NOT_ESS";
    case EssStatus::kNotNe: return "NOT_NE";
  }
  return "?";
}

double StabilityOptions::effective_refine_step() const {
  return refine_step > 0.0 ? refine_step : std::min(1e-3, grid_step / 10.0);
}

std::array<double, 2> StrategySpace::axis_length() const {
  if (kind_ == SpaceKind::kEwlRect) return {kPi, kPi / 2};
  return {1.0, 1.0};
}

bool StrategySpace::contains(const Strategy& s) const {
  const auto len = axis_length();
  auto in = [](double v, double hi) { return v >= -kSnapTol * hi && v <= hi * (1 + kSnapTol); };
  switch (kind_) {
    case SpaceKind::kInterval: return in(s[0], 1.0);
    case SpaceKind::kSimplex2:
      return in(s[0], 1.0) && in(s[1], 1.0) && s[0] + s[1] <= 1.0 + kSnapTol;
    case SpaceKind::kEwlRect: return in(s[0], len[0]) && in(s[1], len[1]);
  }
  return false;
}

Strategy StrategySpace::canonical(const Strategy& s) const {
  const auto len = axis_length();
  Strategy out = s;
  for (int k = 0; k < 2; ++k) {
    if (std::abs(out[k]) <= kSnapTol * len[k]) out[k] = 0.0;
    if (std::abs(out[k] - len[k]) <= kSnapTol * len[k]) out[k] = len[k];
  }
  if (kind_ == SpaceKind::kInterval) out[1] = 0.0;
  if (kind_ == SpaceKind::kEwlRect && out[0] == len[0]) out[1] = 0.0;
  return out;
}

Strategy StrategySpace::snapped(const Strategy& s, int n) const {
  const auto len = axis_length();
  Strategy out = s;
  for (int k = 0; k < dimension(); ++k) {
    const double v = out[k] / len[k] * n;
    const double r = std::round(v);
    if (std::abs(v - r) <= kSnapTol * n) out[k] = node(len[k], static_cast<int>(r), n);
  }
  return canonical(out);
}

std::vector<GridPoint> StrategySpace::grid(double step) const {
  const int n = divisions(step);
  const auto len = axis_length();
  std::vector<GridPoint> out;
  switch (kind_) {
    case SpaceKind::kInterval:
      for (int i = 0; i <= n; ++i) out.push_back({{node(1.0, i, n), 0.0}, {i, 0}});
      break;
    case SpaceKind::kSimplex2:
      for (int i = 0; i <= n; ++i) {
        for (int j = 0; i + j <= n; ++j) {
          out.push_back({{node(1.0, i, n), node(1.0, j, n)}, {i, j}});
        }
      }
      break;
    case SpaceKind::kEwlRect:
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= n; ++j) {
          out.push_back({{node(len[0], i, n), node(len[1], j, n)}, {i, j}});
        }
      }
      out.push_back({{len[0], 0.0}, {n, 0}});
      break;
  }
  return out;
}

std::vector<Strategy> StrategySpace::local_grid(const Strategy& centre, double radius,
                                                double step) const {
  const auto len = axis_length();
  const int m = static_cast<int>(std::lround(radius / step));
  const int mb = dimension() == 2 ? m : 0;
  std::vector<Strategy> out;
  for (int a = -m; a <= m; ++a) {
    for (int b = -mb; b <= mb; ++b) {
      const Strategy s{centre[0] + a * step * len[0], centre[1] + b * step * len[1]};
      if (!contains(s)) continue;
      out.push_back(canonical(s));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

double StrategySpace::distance(const Strategy& a, const Strategy& b) const {
  const auto len = axis_length();
  double d = 0.0;
  for (int k = 0; k < dimension(); ++k) d = std::max(d, std::abs(a[k] - b[k]) / len[k]);
  return d;
}

Strategy StrategySpace::mix(const Strategy& x, const Strategy& y, double eps) const {
  if (!supports_mixing()) {
    throw std::invalid_argument("EWL_RECT has no canonical convex mixture of strategies");
  }
  return canonical({(1 - eps) * x[0] + eps * y[0], (1 - eps) * x[1] + eps * y[1]});
}

// ---------------------------------------------------------------------------

EquilibriumReport check_symmetric_ne(const SymmetricPayoffFn& f, const Strategy& candidate,
                                     const StabilityOptions& opt) {
  const Strategy x = prepare_candidate(f.space, candidate, opt);
  const double pxx = f(x, x);
  return run_grid_scan(
      f.space, x, opt, false, [&](const Strategy& y) { return pxx - f(y, x); }, nullptr);
}

EquilibriumReport check_symmetric_ess(const SymmetricPayoffFn& f, const Strategy& candidate,
                                      const StabilityOptions& opt) {
  const Strategy x = prepare_candidate(f.space, candidate, opt);
  const double pxx = f(x, x);
  return run_grid_scan(
      f.space, x, opt, true, [&](const Strategy& y) { return pxx - f(y, x); },
      [&](const Strategy& y) { return f(x, y) - f(y, y); });
}

EquilibriumReport check_symmetric_ess_against(const SymmetricPayoffFn& f,
                                              const Strategy& candidate,
                                              const std::vector<Strategy>& mutants,
                                              const StabilityOptions& opt) {
  if (!f.space.contains(candidate)) {
    throw std::invalid_argument("candidate lies outside the strategy space");
  }
  const Strategy x = f.space.canonical(candidate);
  const double pxx = f(x, x);
  MutantScan scan(
      f.space, x, opt, true, 0.0, [&](const Strategy& y) { return pxx - f(y, x); },
      [&](const Strategy& y) { return f(x, y) - f(y, y); });
  for (const Strategy& y : mutants) {
    if (!f.space.contains(y)) throw std::invalid_argument("mutant lies outside the strategy space");
    scan.visit(y);
  }
  return scan.report(0.0, false);
}

InvasionResult check_invasion(const SymmetricPayoffFn& f, const Strategy& candidate,
                              const InvasionTest& test, const StabilityOptions& opt) {
  if (!f.space.supports_mixing()) {
    throw std::invalid_argument("check_invasion: EWL_RECT strategies cannot be mixed");
  }
  const Strategy x = f.space.canonical(candidate);
  const Strategy y = f.space.canonical(test.mutant);
  if (x == y) throw std::invalid_argument("check_invasion: mutant equals the candidate");
  if (!f.space.contains(x) || !f.space.contains(y)) {
    throw std::invalid_argument("check_invasion: strategy outside the space");
  }
  for (std::size_t k = 0; k < test.epsilon_grid.size(); ++k) {
    const double e = test.epsilon_grid[k];
    if (!(e > 0.0 && e < 1.0)) throw std::invalid_argument("check_invasion: eps outside (0, 1)");
    if (k > 0 && !(e < test.epsilon_grid[k - 1])) {
      throw std::invalid_argument("check_invasion: eps grid must be strictly decreasing");
    }
  }
  const double pxx = f(x, x), pxy = f(x, y), pyx = f(y, x), pyy = f(y, y);
  InvasionResult out;
  for (double e : test.epsilon_grid) {
    const double margin = ((1 - e) * pxx + e * pxy) - ((1 - e) * pyx + e * pyy);
    out.epsilon.push_back(e);
    out.margin.push_back(margin);
    out.resists.push_back(margin > opt.tol_strict);
  }
  for (std::size_t k = out.epsilon.size(); k-- > 0;) {
    if (!out.resists[k]) break;
    out.barrier = out.epsilon[k];
  }
  return out;
}

AsymmetricReport check_asymmetric_ess(const std::function<double(double, double)>& fa,
                                      const std::function<double(double, double)>& fb,
                                      std::pair<double, double> candidate,
                                      const StabilityOptions& opt) {
  const StrategySpace space = StrategySpace::interval();
  const int n = divisions(opt.grid_step);
  const double xs = space.snapped({candidate.first, 0.0}, n)[0];
  const double ys = space.snapped({candidate.second, 0.0}, n)[0];
  if (!space.contains({xs, 0.0}) || !space.contains({ys, 0.0})) {
    throw std::invalid_argument("check_asymmetric_ess: candidate outside [0, 1]");
  }
  std::vector<Strategy> mutants = coordinates(space.grid(opt.grid_step));
  if (opt.refine) {
    const double fine = opt.effective_refine_step();
    for (double c : {xs, ys}) {
      const auto local = space.local_grid({c, 0.0}, opt.grid_step, fine);
      mutants.insert(mutants.end(), local.begin(), local.end());
    }
  }
  AsymmetricReport r;
  r.candidate = {xs, ys};
  r.grid_step = opt.grid_step;
  r.alice_witness.margin = r.bob_witness.margin = kInf;
  const double pa = fa(xs, ys), pb = fb(xs, ys);
  for (const Strategy& m : mutants) {
    const double v = m[0];
    if (v != xs) {
      const double d = pa - fa(v, ys);
      if (d < r.alice_witness.margin) r.alice_witness = {{v, 0.0}, d};
    }
    if (v != ys) {
      const double d = pb - fb(xs, v);
      if (d < r.bob_witness.margin) r.bob_witness = {{v, 0.0}, d};
    }
  }
  r.alice_margin = r.alice_witness.margin;
  r.bob_margin = r.bob_witness.margin;
  r.is_ne = r.alice_margin >= -opt.tol_ne && r.bob_margin >= -opt.tol_ne;
  r.is_strict = r.alice_margin > opt.tol_strict && r.bob_margin > opt.tol_strict;
  r.ess_status = !r.is_ne ? EssStatus::kNotNe : r.is_strict ? EssStatus::kEss : EssStatus::kNeNotEss;
  return r;
}

EquilibriumReport check_three_player_ess(const ThreePlayerPayoffFn& f, const Strategy& candidate,
                                         const StabilityOptions& opt) {
  const Strategy x = prepare_candidate(f.space, candidate, opt);
  const double pxxx = f.evaluate(x, x, x);
  return run_grid_scan(
      f.space, x, opt, true, [&](const Strategy& y) { return pxxx - f.evaluate(y, x, x); },
      [&](const Strategy& y) { return f.evaluate(x, y, x) - f.evaluate(y, y, x); });
}

std::pair<double, double> fitness_pair(const SymmetricPayoffFn& f, const Strategy& x,
                                       const Strategy& y, double fx) {
  if (!(fx >= 0.0 && fx <= 1.0)) throw std::invalid_argument("fitness_pair: Fx outside [0, 1]");
  const double fy = 1.0 - fx;
  return {f(x, x) * fx + f(x, y) * fy, f(y, x) * fx + f(y, y) * fy};
}

NeScanResult ne_scan(const SymmetricPayoffFn& f, const StabilityOptions& opt) {
  const std::vector<GridPoint> grid = f.space.grid(opt.grid_step);
  const int n = divisions(opt.grid_step);
  const std::size_t size = grid.size();

  std::vector<double> margin(size);
  std::vector<std::size_t> ne;
  for (std::size_t a = 0; a < size; ++a) {
    const Strategy& x = grid[a].s;
    const double pxx = f(x, x);
    double best = -kInf;
    for (const GridPoint& y : grid) best = std::max(best, f(y.s, x));
    margin[a] = pxx - best;
    if (margin[a] >= -opt.tol_ne) ne.push_back(a);
  }

  // Union-find over grid adjacency; the collapsed EWL theta = pi point
  // neighbours the whole theta row before it.
  std::vector<std::size_t> parent(ne.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto root = [&](std::size_t k) {
    while (parent[k] != k) k = parent[k] = parent[parent[k]];
    return k;
  };
  const bool ewl = f.space.kind() == SpaceKind::kEwlRect;
  auto adjacent = [&](const GridPoint& u, const GridPoint& v) {
    const int di = std::abs(u.index[0] - v.index[0]);
    const int dj = std::abs(u.index[1] - v.index[1]);
    if (ewl && (u.index[0] == n || v.index[0] == n)) return di <= 1;
    return di <= 1 && dj <= 1;
  };
  for (std::size_t a = 0; a < ne.size(); ++a) {
    for (std::size_t b = a + 1; b < ne.size(); ++b) {
      if (adjacent(grid[ne[a]], grid[ne[b]])) parent[root(a)] = root(b);
    }
  }

  NeScanResult out;
  out.grid_step = opt.grid_step;
  out.grid_size = size;
  out.degenerate = !ne.empty() && ne.size() == size;
  std::vector<std::size_t> root_to_cluster(ne.size(), static_cast<std::size_t>(-1));
  for (std::size_t a = 0; a < ne.size(); ++a) {
    const std::size_t r = root(a);
    if (root_to_cluster[r] == static_cast<std::size_t>(-1)) {
      root_to_cluster[r] = out.clusters.size();
      out.clusters.push_back({});
      out.clusters.back().best_margin = -kInf;
    }
    NeCluster& c = out.clusters[root_to_cluster[r]];
    const GridPoint& g = grid[ne[a]];
    c.members.push_back(g.s);
    if (margin[ne[a]] > c.best_margin) {
      c.best_margin = margin[ne[a]];
      c.representative = g.s;
    }
  }
  return out;
}

}  // namespace qgess
