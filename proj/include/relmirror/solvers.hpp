#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

#include "relmirror/geometry.hpp"
#include "relmirror/oracle.hpp"

namespace relmirror {

struct ConstantStep {
  double t;
};

// t_i = eps / M^2 for every i.
struct EpsOverMSquaredStep {
  double eps;
  double m;
};

// t_i = 2 / (mu (i + 1)).
struct RelativeStrongStep {
  double mu;
};

class StepPolicy {
 public:
  using Rule = std::variant<ConstantStep, EpsOverMSquaredStep, RelativeStrongStep>;

  // Throws InvalidInput unless every parameter is finite and positive.
  StepPolicy(Rule rule);
  StepPolicy(ConstantStep r) : StepPolicy(Rule(r)) {}
  StepPolicy(EpsOverMSquaredStep r) : StepPolicy(Rule(r)) {}
  StepPolicy(RelativeStrongStep r) : StepPolicy(Rule(r)) {}

  double step(std::size_t i) const;
  const Rule& rule() const { return rule_; }
  bool is_relative_strong() const { return std::holds_alternative<RelativeStrongStep>(rule_); }

 private:
  Rule rule_;
};

struct SolverConfig {
  StepPolicy policy{ConstantStep{1.0}};
  // Final iterate index k: iterates x^0..x^k enter the averages and k + 1
  // subproblems are solved.
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t replications = 1;
  bool record_trace = false;
};

struct TraceRow {
  std::size_t iter;
  double step;
  double f_x;
  double f_bar;
  // f at the index-weighted average; only for RelativeStrong policies and i >= 1.
  std::optional<double> f_hat;
  double f_best;
};

struct Trace {
  std::size_t iterations = 0;
  // Per-iteration rows and iterates x^0..x^k; empty unless record_trace.
  std::vector<TraceRow> rows;
  std::vector<Vector> iterates;

  // x_bar^k = sum t_i x^i / sum t_i
  Vector x_bar;
  // x_hat^k = 2 / (k (k+1)) sum i x^i; empty when k == 0.
  Vector x_hat;
  // x^{k+1}, produced by the last update.
  Vector final_iterate;

  double sum_steps = 0.0;
  double sum_steps_sq = 0.0;
  double f_bar = 0.0;
  std::optional<double> f_hat;
  double f_best = 0.0;
};

// Deterministic mirror descent: x^{i+1} = mirror_update(x^i, g(x^i), t_i, ref).
// Subproblem failures are rethrown as SolverFailure carrying the index.
Trace mirror_descent(const Problem& problem, const PolyNormReference& ref, const Vector& x0,
                     const SolverConfig& config);

// Stochastic mirror descent with a single run seeded by config.seed.
Trace stochastic_mirror_descent(const StochasticProblem& problem, const PolyNormReference& ref,
                                const Vector& x0, const SolverConfig& config);

// config.replications independent runs; replication r is seeded with
// mix_seed(config.seed, r). Runs use up to `threads` workers (0 = hardware).
std::vector<Trace> stochastic_mirror_descent_replicated(const StochasticProblem& problem,
                                                        const PolyNormReference& ref,
                                                        const Vector& x0,
                                                        const SolverConfig& config,
                                                        std::size_t threads = 1);

// (M^2/2 sum t_i^2 + D0) / sum t_i
double gap_bound(double m, std::span<const double> steps, double d0);

// ceil(2 M^2 D0 / eps^2) - 1, floored at zero.
std::size_t iteration_budget(double m, double d0, double eps);

// 2 M^2 / (mu (k + 1)), k >= 1.
double strong_gap_bound(double m, double mu, std::size_t k);

// min(1, gap_bound / delta): Markov bound on P[f(x_bar) - f* >= delta].
double markov_tail_bound(double gap_bound, double delta);

}  // namespace relmirror
