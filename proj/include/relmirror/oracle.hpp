#pragma once

#include <cstddef>
#include <functional>

#include "relmirror/rng.hpp"
#include "relmirror/vector.hpp"

namespace relmirror {

// Convex objective with a deterministic subgradient oracle.
class Problem {
 public:
  virtual ~Problem() = default;

  virtual Index dimension() const = 0;
  virtual double objective(const Vector& x) const = 0;
  virtual Vector subgradient(const Vector& x) const = 0;
};

// Finite-sum objective f = (1/n) sum_j f_j whose stochastic oracle returns a
// subgradient of one uniformly drawn component. Exposing the components lets
// conditional expectations be computed exactly by enumeration.
class StochasticProblem : public Problem {
 public:
  virtual std::size_t component_count() const = 0;
  virtual Vector component_subgradient(std::size_t j, const Vector& x) const = 0;

  // Draws j uniformly from {0, ..., n-1}; mutates only the caller's generator.
  Vector stochastic_subgradient(const Vector& x, Rng& rng) const {
    return component_subgradient(rng.index(component_count()), x);
  }
};

// Problem backed by callables. Handy for ad hoc objectives and combinations.
class FunctionProblem : public Problem {
 public:
  using Objective = std::function<double(const Vector&)>;
  using Subgradient = std::function<Vector(const Vector&)>;

  FunctionProblem(Index dimension, Objective f, Subgradient g)
      : dim_(dimension), f_(std::move(f)), g_(std::move(g)) {}

  Index dimension() const override { return dim_; }
  double objective(const Vector& x) const override { return f_(x); }
  Vector subgradient(const Vector& x) const override { return g_(x); }

 private:
  Index dim_;
  Objective f_;
  Subgradient g_;
};

}  // namespace relmirror
