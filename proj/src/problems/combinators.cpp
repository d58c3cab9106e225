#include "relmirror/problems/combinators.hpp"

#include <cmath>

namespace relmirror {

SumProblem::SumProblem(std::vector<std::shared_ptr<const Problem>> terms, std::vector<double> weights)
    : terms_(std::move(terms)), weights_(std::move(weights)) {
  if (terms_.empty()) throw InvalidInput("SumProblem needs at least one term");
  if (weights_.empty()) weights_.assign(terms_.size(), 1.0);
  if (weights_.size() != terms_.size()) throw InvalidInput("one weight per term expected");
  for (const auto& t : terms_) {
    if (!t) throw InvalidInput("null term");
    if (t->dimension() != terms_.front()->dimension()) {
      throw DimensionMismatch(terms_.front()->dimension(), t->dimension());
    }
  }
}

double SumProblem::objective(const Vector& x) const {
  double out = 0.0;
  for (std::size_t j = 0; j < terms_.size(); ++j) out += weights_[j] * terms_[j]->objective(x);
  return out;
}

Vector SumProblem::subgradient(const Vector& x) const {
  Vector out = Vector::Zero(dimension());
  for (std::size_t j = 0; j < terms_.size(); ++j) out += weights_[j] * terms_[j]->subgradient(x);
  return out;
}

ScaledProblem::ScaledProblem(std::shared_ptr<const Problem> inner, double alpha)
    : inner_(std::move(inner)), alpha_(alpha) {
  if (!inner_) throw InvalidInput("null problem");
  if (!std::isfinite(alpha_) || !(alpha_ > 0.0)) throw InvalidInput("alpha must be positive");
}

}  // namespace relmirror
