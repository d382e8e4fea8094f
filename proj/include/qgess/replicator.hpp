#ifndef QGESS_REPLICATOR_HPP
#define QGESS_REPLICATOR_HPP

// Continuous replicator dynamics x_i' = x_i [(Ax)_i - x^T A x] over a finite
// set of pure strategies, integrated with fixed-step RK4.

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qgess {

class Population {
 public:
  /// Nonnegative frequencies summing to 1 within 1e-12.
  explicit Population(std::vector<double> freqs);

  static Population uniform(int n);
  static Population vertex(int n, int index);

  int size() const { return static_cast<int>(freqs_.size()); }
  double operator[](int i) const { return freqs_.at(i); }
  const std::vector<double>& freqs() const { return freqs_; }
  Eigen::VectorXd vector() const;

  double distance(const Population& other) const;

 private:
  std::vector<double> freqs_;
};

struct EvolveOptions {
  double dt = 1e-3;
  long steps = 10000;
  /// Record every k-th step; the initial and final states are always kept.
  long sample_every = 100;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<Population> states;
  double dt = 0.0;
  double horizon = 0.0;

  const Population& terminal() const { return states.back(); }
};

/// One RK4 step, then negative shares clamped to 0 and the vector renormalized.
Population replicator_step(const Population& pop, const Eigen::MatrixXd& payoff, double dt);

Trajectory evolve(const Population& start, const Eigen::MatrixXd& payoff,
                  const EvolveOptions& opt = {});

/// Header "time,x1,...,xn" followed by one row per sample.
std::string to_csv(const Trajectory& trajectory);

enum class ProbeVerdict { kReturns, kEscapes, kInconclusive };

std::string to_string(ProbeVerdict verdict);

struct ProbeDirection {
  int strategy = 0;
  /// Perturbation toward a vertex the candidate already occupies.
  bool skipped = false;
  double terminal_distance = 0.0;
  ProbeVerdict verdict = ProbeVerdict::kInconclusive;
};

struct ProbeResult {
  ProbeVerdict verdict = ProbeVerdict::kInconclusive;
  std::vector<ProbeDirection> directions;
  double delta = 0.0;
  double horizon = 0.0;
};

/// Moves the candidate a share `delta` toward each pure strategy, evolves,
/// and compares the terminal distance with delta/10 (returns) and 10 delta (escapes).
/// Overall: RETURNS when every direction returns, ESCAPES when any escapes.
ProbeResult stability_probe(const Population& candidate, const Eigen::MatrixXd& payoff,
                            double delta, const EvolveOptions& opt = {});

}  // namespace qgess

#endif  // QGESS_REPLICATOR_HPP
