#include "qgess/replicator.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace qgess {

namespace {

constexpr double kSumTol = 1e-12;

Eigen::VectorXd velocity(const Eigen::VectorXd& x, const Eigen::MatrixXd& a) {
  const Eigen::VectorXd ax = a * x;
  const double mean = x.dot(ax);
  return x.cwiseProduct((ax.array() - mean).matrix());
}

void require_shape(const Population& pop, const Eigen::MatrixXd& payoff) {
  if (payoff.rows() != payoff.cols() || payoff.rows() != pop.size()) {
    throw std::invalid_argument("replicator: payoff matrix does not match population size");
  }
}

}  // namespace

Population::Population(std::vector<double> freqs) : freqs_(std::move(freqs)) {
  if (freqs_.empty()) throw std::invalid_argument("Population: empty");
  double total = 0.0;
  for (double f : freqs_) {
    if (!(f >= 0.0)) throw std::invalid_argument("Population: negative or NaN share");
    total += f;
  }
  if (std::abs(total - 1.0) > kSumTol) {
    throw std::invalid_argument("Population: shares do not sum to 1");
  }
}

Population Population::uniform(int n) {
  if (n <= 0) throw std::invalid_argument("Population::uniform: n must be positive");
  return Population(std::vector<double>(n, 1.0 / n));
}

Population Population::vertex(int n, int index) {
  if (index < 0 || index >= n) throw std::out_of_range("Population::vertex: index");
  std::vector<double> f(n, 0.0);
  f[index] = 1.0;
  return Population(std::move(f));
}

Eigen::VectorXd Population::vector() const {
  return Eigen::Map<const Eigen::VectorXd>(freqs_.data(), size());
}

double Population::distance(const Population& other) const {
  if (other.size() != size()) throw std::invalid_argument("Population::distance: size mismatch");
  return (vector() - other.vector()).norm();
}

Population replicator_step(const Population& pop, const Eigen::MatrixXd& payoff, double dt) {
  if (!(dt > 0.0)) throw std::invalid_argument("replicator_step: dt must be positive");
  require_shape(pop, payoff);
  const Eigen::VectorXd x = pop.vector();
  const Eigen::VectorXd k1 = velocity(x, payoff);
  const Eigen::VectorXd k2 = velocity(x + 0.5 * dt * k1, payoff);
  const Eigen::VectorXd k3 = velocity(x + 0.5 * dt * k2, payoff);
  const Eigen::VectorXd k4 = velocity(x + dt * k3, payoff);
  Eigen::VectorXd next = x + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  next = next.cwiseMax(0.0);
  const double total = next.sum();
  if (!(total > 0.0) || !std::isfinite(total)) {
    throw std::runtime_error("replicator_step: integration diverged");
  }
  next /= total;
  return Population(std::vector<double>(next.data(), next.data() + next.size()));
}

Trajectory evolve(const Population& start, const Eigen::MatrixXd& payoff,
                  const EvolveOptions& opt) {
  require_shape(start, payoff);
  if (opt.steps < 0 || opt.sample_every <= 0) {
    throw std::invalid_argument("evolve: steps must be >= 0 and sample_every > 0");
  }
  Trajectory t;
  t.dt = opt.dt;
  t.horizon = opt.dt * static_cast<double>(opt.steps);
  t.times.push_back(0.0);
  t.states.push_back(start);
  Population current = start;
  for (long k = 1; k <= opt.steps; ++k) {
    current = replicator_step(current, payoff, opt.dt);
    if (k % opt.sample_every == 0 || k == opt.steps) {
      t.times.push_back(opt.dt * static_cast<double>(k));
      t.states.push_back(current);
    }
  }
  return t;
}

std::string to_csv(const Trajectory& trajectory) {
  std::string out = "time";
  const int n = trajectory.states.empty() ? 0 : trajectory.states.front().size();
  for (int i = 1; i <= n; ++i) out += ",x" + std::to_string(i);
  out += '\n';
  char buf[32];
  for (std::size_t k = 0; k < trajectory.states.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.6f", trajectory.times[k]);
    out += buf;
    for (double f : trajectory.states[k].freqs()) {
      std::snprintf(buf, sizeof buf, ",%.12g", f);
      out += buf;
    }
    out += '\n';
  }
  return out;
}

std::string to_string(ProbeVerdict verdict) {
  switch (verdict) {
    case ProbeVerdict::kReturns: return "RETURNS";
    case ProbeVerdict::kEscapes: return "ESCAPES";
    case ProbeVerdict::kInconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

ProbeResult stability_probe(const Population& candidate, const Eigen::MatrixXd& payoff,
                            double delta, const EvolveOptions& opt) {
  if (!(delta > 0.0 && delta <= 0.1)) {
    throw std::invalid_argument("stability_probe: delta must lie in (0, 0.1]");
  }
  require_shape(candidate, payoff);
  ProbeResult r;
  r.delta = delta;
  r.horizon = opt.dt * static_cast<double>(opt.steps);
  EvolveOptions quiet = opt;
  quiet.sample_every = std::max<long>(1, opt.steps);

  bool all_return = true, any_escape = false, any_probe = false;
  for (int i = 0; i < candidate.size(); ++i) {
    ProbeDirection d;
    d.strategy = i;
    if (candidate[i] == 1.0) {
      d.skipped = true;
      r.directions.push_back(d);
      continue;
    }
    std::vector<double> start = candidate.freqs();
    for (double& f : start) f *= 1.0 - delta;
    start[i] += delta;
    const Trajectory t = evolve(Population(start), payoff, quiet);
    d.terminal_distance = t.terminal().distance(candidate);
    if (d.terminal_distance < delta / 10.0) {
      d.verdict = ProbeVerdict::kReturns;
    } else if (d.terminal_distance > 10.0 * delta) {
      d.verdict = ProbeVerdict::kEscapes;
    }
    any_probe = true;
    all_return = all_return && d.verdict == ProbeVerdict::kReturns;
    any_escape = any_escape || d.verdict == ProbeVerdict::kEscapes;
    r.directions.push_back(d);
  }
  if (any_escape) {
    r.verdict = ProbeVerdict::kEscapes;
  } else if (any_probe && all_return) {
    r.verdict = ProbeVerdict::kReturns;
  }
  return r;
}

}  // namespace qgess
