#include "relmirror/solvers.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "relmirror/subproblem.hpp"

namespace relmirror {

namespace {

void require_positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw InvalidInput(std::string(what) + " must be positive");
}

template <typename SubgradientFn>
Trace run_mirror_descent(const Problem& problem, const PolyNormReference& ref, const Vector& x0,
                         const SolverConfig& config, SubgradientFn&& subgradient) {
  require_dimension(x0, problem.dimension());
  require_finite(x0, "x0");

  const std::size_t k = config.iterations;
  const bool strong = config.policy.is_relative_strong();

  Trace trace;
  trace.iterations = k;
  if (config.record_trace) {
    trace.rows.reserve(k + 1);
    trace.iterates.reserve(k + 1);
  }

  Vector weighted_sum = Vector::Zero(x0.size());
  Vector index_sum = Vector::Zero(x0.size());
  double f_best = std::numeric_limits<double>::infinity();
  Vector x = x0;

  for (std::size_t i = 0; i <= k; ++i) {
    const double t = config.policy.step(i);
    const double fx = problem.objective(x);
    f_best = std::min(f_best, fx);
    trace.sum_steps += t;
    trace.sum_steps_sq += t * t;
    weighted_sum += t * x;
    index_sum += static_cast<double>(i) * x;

    if (config.record_trace) {
      TraceRow row{i, t, fx, problem.objective(weighted_sum / trace.sum_steps), std::nullopt,
                   f_best};
      if (strong && i >= 1) {
        const double norm = 0.5 * static_cast<double>(i) * static_cast<double>(i + 1);
        row.f_hat = problem.objective(index_sum / norm);
      }
      trace.rows.push_back(row);
      trace.iterates.push_back(x);
    }

    const Vector g = subgradient(x);
    try {
      x = mirror_update(x, g, t, ref);
    } catch (const NumericalFailure& e) {
      throw SolverFailure(i, e);
    }
  }

  trace.x_bar = weighted_sum / trace.sum_steps;
  trace.f_bar = problem.objective(trace.x_bar);
  if (k >= 1) {
    trace.x_hat = index_sum / (0.5 * static_cast<double>(k) * static_cast<double>(k + 1));
    if (strong) trace.f_hat = problem.objective(trace.x_hat);
  }
  trace.final_iterate = std::move(x);
  trace.f_best = f_best;
  return trace;
}

}  // namespace

StepPolicy::StepPolicy(Rule rule) : rule_(rule) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantStep>) {
          require_positive(r.t, "step size");
        } else if constexpr (std::is_same_v<T, EpsOverMSquaredStep>) {
          require_positive(r.eps, "eps");
          require_positive(r.m, "M");
        } else {
          require_positive(r.mu, "mu");
        }
      },
      rule_);
}

double StepPolicy::step(std::size_t i) const {
  return std::visit(
      [i](const auto& r) -> double {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, ConstantStep>) {
          return r.t;
        } else if constexpr (std::is_same_v<T, EpsOverMSquaredStep>) {
          return r.eps / (r.m * r.m);
        } else {
          return 2.0 / (r.mu * static_cast<double>(i + 1));
        }
      },
      rule_);
}

Trace mirror_descent(const Problem& problem, const PolyNormReference& ref, const Vector& x0,
                     const SolverConfig& config) {
  return run_mirror_descent(problem, ref, x0, config,
                            [&](const Vector& x) { return problem.subgradient(x); });
}

Trace stochastic_mirror_descent(const StochasticProblem& problem, const PolyNormReference& ref,
                                const Vector& x0, const SolverConfig& config) {
  Rng rng(config.seed);
  return run_mirror_descent(problem, ref, x0, config, [&](const Vector& x) {
    return problem.stochastic_subgradient(x, rng);
  });
}

std::vector<Trace> stochastic_mirror_descent_replicated(const StochasticProblem& problem,
                                                        const PolyNormReference& ref,
                                                        const Vector& x0,
                                                        const SolverConfig& config,
                                                        std::size_t threads) {
  if (config.replications < 1) throw InvalidInput("replications must be at least 1");
  const std::size_t reps = config.replications;
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, reps);

  std::vector<Trace> out(reps);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (std::size_t r = next++; r < reps; r = next++) {
      try {
        SolverConfig local = config;
        local.seed = mix_seed(config.seed, r);
        out[r] = stochastic_mirror_descent(problem, ref, x0, local);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t w = 0; w < threads; ++w) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

double gap_bound(double m, std::span<const double> steps, double d0) {
  if (steps.empty()) throw InvalidInput("gap_bound needs at least one step");
  if (!(d0 >= 0.0)) throw InvalidInput("D0 must be nonnegative");
  double sum = 0.0, sum_sq = 0.0;
  for (double t : steps) {
    require_positive(t, "step size");
    sum += t;
    sum_sq += t * t;
  }
  return (0.5 * m * m * sum_sq + d0) / sum;
}

std::size_t iteration_budget(double m, double d0, double eps) {
  require_positive(m, "M");
  require_positive(eps, "eps");
  if (!(d0 >= 0.0)) throw InvalidInput("D0 must be nonnegative");
  const double raw = std::ceil(2.0 * m * m * d0 / (eps * eps)) - 1.0;
  return raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
}

double strong_gap_bound(double m, double mu, std::size_t k) {
  require_positive(mu, "mu");
  if (k < 1) throw InvalidInput("strong_gap_bound requires k >= 1");
  return 2.0 * m * m / (mu * static_cast<double>(k + 1));
}

double markov_tail_bound(double gap_bound, double delta) {
  require_positive(delta, "delta");
  if (!(gap_bound >= 0.0)) throw InvalidInput("gap bound must be nonnegative");
  return std::min(1.0, gap_bound / delta);
}

}  // namespace relmirror
