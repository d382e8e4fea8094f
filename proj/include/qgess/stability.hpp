#ifndef QGESS_STABILITY_HPP
#define QGESS_STABILITY_HPP

// Nash-equilibrium and ESS certification over abstract payoff functions.
//
// "For all mutants" is certified on a finite grid plus a local refinement
// around the candidate and the worst coarse mutant. Reports carry the grid
// step so every verdict can be reproduced; they are not formal proofs.

#include <array>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace qgess {

/// Coordinates of a strategy: p for INTERVAL (second entry unused),
/// (p, p1) for SIMPLEX2, (theta, phi) for EWL_RECT.
using Strategy = std::array<double, 2>;

enum class SpaceKind {
  kInterval,  // p in [0, 1]
  kSimplex2,  // p, p1 >= 0, p + p1 <= 1
  kEwlRect,   // theta in [0, pi], phi in [0, pi/2]
};

std::string to_string(SpaceKind kind);

struct GridPoint {
  Strategy s{};
  std::array<int, 2> index{};
};

class StrategySpace {
 public:
  static StrategySpace interval() { return StrategySpace(SpaceKind::kInterval); }
  static StrategySpace simplex2() { return StrategySpace(SpaceKind::kSimplex2); }
  static StrategySpace ewl_rect() { return StrategySpace(SpaceKind::kEwlRect); }

  SpaceKind kind() const { return kind_; }
  int dimension() const { return kind_ == SpaceKind::kInterval ? 1 : 2; }
  bool supports_mixing() const { return kind_ != SpaceKind::kEwlRect; }

  bool contains(const Strategy& s) const;
  /// Clears unused coordinates, snaps values within 1e-12 of the bounds, and
  /// for EWL_RECT maps every (pi, phi) to (pi, 0), since U(pi, phi) is the same matrix.
  Strategy canonical(const Strategy& s) const;
  /// Canonical form with each coordinate snapped to a grid of n divisions
  /// per axis when it lies within 1e-12 (relative to the axis) of a node.
  Strategy snapped(const Strategy& s, int n) const;

  /// Grid with n = round(1/step) divisions per axis. The EWL theta = pi row
  /// collapses to a single point.
  std::vector<GridPoint> grid(double step) const;
  /// Points within `radius` (axis fraction, Chebyshev) of `centre` at spacing `step`.
  std::vector<Strategy> local_grid(const Strategy& centre, double radius, double step) const;

  /// Chebyshev distance in axis-fraction units.
  double distance(const Strategy& a, const Strategy& b) const;
  /// (1 - eps) x + eps y; throws for EWL_RECT.
  Strategy mix(const Strategy& x, const Strategy& y, double eps) const;

 private:
  explicit StrategySpace(SpaceKind kind) : kind_(kind) {}
  std::array<double, 2> axis_length() const;

  SpaceKind kind_;
};

/// P(x, y): payoff to an x-player against a y-player.
struct SymmetricPayoffFn {
  StrategySpace space;
  std::function<double(const Strategy&, const Strategy&)> evaluate;

  double operator()(const Strategy& x, const Strategy& y) const { return evaluate(x, y); }
};

/// P(x, y, z): payoff to an x-player against a y-player and a z-player.
struct ThreePlayerPayoffFn {
  StrategySpace space;
  std::function<double(const Strategy&, const Strategy&, const Strategy&)> evaluate;
};

struct StabilityOptions {
  double tol_eq = 1e-9;
  double tol_strict = 1e-9;
  double tol_ne = 1e-9;
  double grid_step = 1e-2;
  /// Local refinement spacing; 0 selects min(1e-3, grid_step / 10).
  double refine_step = 0.0;
  bool refine = true;

  double effective_refine_step() const;
};

enum class EssStatus { kEss, kNeNotEss, kNotNe };

std::string to_string(EssStatus status);

struct Witness {
  Strategy mutant{};
  double margin = 0.0;
};

struct EquilibriumReport {
  Strategy candidate{};
  bool is_ne = false;
  /// min over mutants of P(x*,x*) - P(y,x*)
  double ne_margin = 0.0;
  bool is_strict = false;
  /// Empty for NE-only reports.
  std::optional<EssStatus> ess_status;
  /// Worst mutant for the deciding condition. Always present on full reports.
  std::optional<Witness> witness;
  /// min of P(x*,y) - P(y,y) over mutants tying the first condition.
  std::optional<double> second_margin;
  double grid_step = 0.0;
  bool refined = false;
  std::size_t mutants_tested = 0;
};

EquilibriumReport check_symmetric_ne(const SymmetricPayoffFn& f, const Strategy& candidate,
                                     const StabilityOptions& opt = {});

EquilibriumReport check_symmetric_ess(const SymmetricPayoffFn& f, const Strategy& candidate,
                                      const StabilityOptions& opt = {});

/// ESS conditions tested only against the listed mutants (no grid).
EquilibriumReport check_symmetric_ess_against(const SymmetricPayoffFn& f,
                                              const Strategy& candidate,
                                              const std::vector<Strategy>& mutants,
                                              const StabilityOptions& opt = {});

struct InvasionTest {
  /// Strictly decreasing values in (0, 1).
  std::vector<double> epsilon_grid;
  Strategy mutant{};
};

struct InvasionResult {
  std::vector<double> epsilon;
  std::vector<bool> resists;
  /// P[x, w] - P[y, w] with w = (1-eps) x + eps y.
  std::vector<double> margin;
  /// Largest grid eps below which every grid eps resists, if any.
  std::optional<double> barrier;
};

/// P[x,(1-eps)x+eps y] > P[y,(1-eps)x+eps y], expanded by linearity in the
/// second argument. Throws std::invalid_argument for EWL_RECT or y == x.
InvasionResult check_invasion(const SymmetricPayoffFn& f, const Strategy& candidate,
                              const InvasionTest& test, const StabilityOptions& opt = {});

struct AsymmetricReport {
  std::pair<double, double> candidate{};
  bool is_ne = false;
  bool is_strict = false;
  EssStatus ess_status = EssStatus::kNotNe;
  /// min over x != x* of fA(x*,y*) - fA(x,y*)
  double alice_margin = 0.0;
  /// min over y != y* of fB(x*,y*) - fB(x*,y)
  double bob_margin = 0.0;
  Witness alice_witness;
  Witness bob_witness;
  double grid_step = 0.0;
};

/// Strict-NE test for a bimatrix game on mixed strategies p, q in [0, 1].
/// fA and fB take (Alice's p, Bob's q).
AsymmetricReport check_asymmetric_ess(const std::function<double(double, double)>& fa,
                                      const std::function<double(double, double)>& fb,
                                      std::pair<double, double> candidate,
                                      const StabilityOptions& opt = {});

/// Condition P(p,p,p) > P(q,p,p); on ties, P(p,q,p) > P(q,q,p).
EquilibriumReport check_three_player_ess(const ThreePlayerPayoffFn& f, const Strategy& candidate,
                                         const StabilityOptions& opt = {});

/// (W(x), W(y)) with W(x) = P(x,x) Fx + P(x,y) Fy and Fy = 1 - Fx.
std::pair<double, double> fitness_pair(const SymmetricPayoffFn& f, const Strategy& x,
                                       const Strategy& y, double fx);

struct NeCluster {
  std::vector<Strategy> members;
  /// Member with the largest NE margin.
  Strategy representative{};
  double best_margin = 0.0;
};

struct NeScanResult {
  std::vector<NeCluster> clusters;
  /// Every grid point is an approximate NE.
  bool degenerate = false;
  double grid_step = 0.0;
  std::size_t grid_size = 0;
};

/// Grid points x with P(x,x) >= max_y P(y,x) - tol_ne, grouped by grid adjacency.
NeScanResult ne_scan(const SymmetricPayoffFn& f, const StabilityOptions& opt = {});

}  // namespace qgess

#endif  // QGESS_STABILITY_HPP
