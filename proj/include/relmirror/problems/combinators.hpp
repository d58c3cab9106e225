#pragma once

#include <memory>
#include <vector>

#include "relmirror/oracle.hpp"

namespace relmirror {

// sum_j weight_j f_j, with subgradient sum_j weight_j g_j.
class SumProblem : public Problem {
 public:
  SumProblem(std::vector<std::shared_ptr<const Problem>> terms, std::vector<double> weights = {});

  Index dimension() const override { return terms_.front()->dimension(); }
  double objective(const Vector& x) const override;
  Vector subgradient(const Vector& x) const override;

 private:
  std::vector<std::shared_ptr<const Problem>> terms_;
  std::vector<double> weights_;
};

// alpha f.
class ScaledProblem : public Problem {
 public:
  ScaledProblem(std::shared_ptr<const Problem> inner, double alpha);

  Index dimension() const override { return inner_->dimension(); }
  double objective(const Vector& x) const override { return alpha_ * inner_->objective(x); }
  Vector subgradient(const Vector& x) const override { return alpha_ * inner_->subgradient(x); }

 private:
  std::shared_ptr<const Problem> inner_;
  double alpha_;
};

}  // namespace relmirror
