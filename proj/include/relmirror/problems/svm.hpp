#pragma once

#include <cstddef>

#include "relmirror/geometry.hpp"
#include "relmirror/oracle.hpp"

namespace relmirror {

// Hinge-loss SVM
//   f(x) = (1/n) sum_i max{0, 1 - y_i <x, w_i>} + (lambda/2) ||x||^2
// with feature rows w_i. Component j is f_j(x) = hinge_j(x) + (lambda/2)||x||^2.
//
// At an exact margin (1 - y_i <x, w_i> == 0) the hinge contributes 0.
class SvmInstance : public StochasticProblem {
 public:
  // Throws InvalidInput unless n, m >= 1, labels are +-1, entries are finite
  // and lambda > 0.
  SvmInstance(Matrix features, Vector labels, double lambda);

  std::size_t sample_count() const { return static_cast<std::size_t>(features_.rows()); }
  const Matrix& features() const { return features_; }
  const Vector& labels() const { return labels_; }
  double lambda() const { return lambda_; }

  Index dimension() const override { return features_.cols(); }
  double objective(const Vector& x) const override;
  // lambda x + (1/n) sum_i s_i with s_i = -y_i w_i on strictly active margins,
  // evaluated as the mean of component_subgradient over all j.
  Vector subgradient(const Vector& x) const override;

  std::size_t component_count() const override { return sample_count(); }
  Vector component_subgradient(std::size_t j, const Vector& x) const override;

 private:
  Matrix features_;
  Vector labels_;
  double lambda_;
};

// Aggregates of an SVM instance used by its reference function and budget.
struct SvmConstants {
  double lambda = 0.0;
  std::size_t n = 1;
  double sum_norms = 0.0;     // sum_i ||w_i||
  double sum_sq_norms = 0.0;  // sum_i ||w_i||^2
};

SvmConstants svm_constants(const SvmInstance& inst);

// a = [(1/n) sum ||w_i||^2, (2 lambda / n) sum ||w_i||, lambda^2], certificate 1.
// The stochastic oracle is 1-stochastically continuous relative to this h.
PolyNormReference svm_reference(const SvmInstance& inst);

// min{ (1/(n lambda)) sum ||w_i||, sqrt(2/lambda) }: the minimizer lies in this ball.
double svm_radius_bound(const SvmInstance& inst);

// Iteration count after which constant steps t = eps give E[f(x_bar)] - f* <= eps:
//   ceil(||x*-x0||^2 (3 lambda^2 (||x*+x0||^2 + 2||x0||^2)
//                     + (8 lambda / n) sum||w_i|| (||x*|| + 2||x0||)
//                     + (6/n) sum||w_i||^2) / (6 eps^2)) - 1, floored at 0.
std::size_t svm_iteration_budget(const SvmConstants& constants, const Vector& x_star,
                                 const Vector& x0, double eps);
std::size_t svm_iteration_budget(const SvmInstance& inst, const Vector& x_star, const Vector& x0,
                                 double eps);

}  // namespace relmirror
