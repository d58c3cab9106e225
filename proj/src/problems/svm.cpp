#include "relmirror/problems/svm.hpp"

#include <cmath>

namespace relmirror {

SvmInstance::SvmInstance(Matrix features, Vector labels, double lambda)
    : features_(std::move(features)), labels_(std::move(labels)), lambda_(lambda) {
  if (features_.rows() < 1 || features_.cols() < 1) {
    throw InvalidInput("SVM instance needs at least one sample and one feature");
  }
  if (labels_.size() != features_.rows()) throw DimensionMismatch(features_.rows(), labels_.size());
  if (!features_.allFinite()) throw InvalidInput("SVM features have non-finite entries");
  for (Index i = 0; i < labels_.size(); ++i) {
    if (labels_[i] != 1.0 && labels_[i] != -1.0) {
      throw InvalidInput("SVM label " + std::to_string(i) + " is not +1 or -1");
    }
  }
  if (!std::isfinite(lambda_) || !(lambda_ > 0.0)) throw InvalidInput("lambda must be positive");
}

double SvmInstance::objective(const Vector& x) const {
  require_dimension(x, dimension());
  double loss = 0.0;
  for (Index i = 0; i < features_.rows(); ++i) {
    loss += std::max(0.0, 1.0 - labels_[i] * features_.row(i).dot(x));
  }
  return loss / static_cast<double>(sample_count()) + 0.5 * lambda_ * x.squaredNorm();
}

Vector SvmInstance::subgradient(const Vector& x) const {
  require_dimension(x, dimension());
  // Summed as the mean of the component oracles so that averaging the
  // stochastic oracle over all indices reproduces this vector exactly.
  Vector sum = Vector::Zero(dimension());
  for (std::size_t j = 0; j < sample_count(); ++j) sum += component_subgradient(j, x);
  return sum / static_cast<double>(sample_count());
}

Vector SvmInstance::component_subgradient(std::size_t j, const Vector& x) const {
  require_dimension(x, dimension());
  const auto row = static_cast<Index>(j);
  Vector g = lambda_ * x;
  if (1.0 - labels_[row] * features_.row(row).dot(x) > 0.0) {
    g -= labels_[row] * features_.row(row).transpose();
  }
  return g;
}

SvmConstants svm_constants(const SvmInstance& inst) {
  SvmConstants out;
  out.lambda = inst.lambda();
  out.n = inst.sample_count();
  for (Index i = 0; i < inst.features().rows(); ++i) {
    const double sq = inst.features().row(i).squaredNorm();
    out.sum_sq_norms += sq;
    out.sum_norms += std::sqrt(sq);
  }
  return out;
}

PolyNormReference svm_reference(const SvmInstance& inst) {
  const SvmConstants k = svm_constants(inst);
  const double n = static_cast<double>(k.n);
  return PolyNormReference({k.sum_sq_norms / n, 2.0 * k.lambda * k.sum_norms / n,
                            k.lambda * k.lambda},
                           1.0);
}

double svm_radius_bound(const SvmInstance& inst) {
  const SvmConstants k = svm_constants(inst);
  return std::min(k.sum_norms / (static_cast<double>(k.n) * k.lambda), std::sqrt(2.0 / k.lambda));
}

std::size_t svm_iteration_budget(const SvmConstants& k, const Vector& x_star, const Vector& x0,
                                 double eps) {
  require_dimension(x0, x_star.size());
  if (!std::isfinite(eps) || !(eps > 0.0)) throw InvalidInput("eps must be positive");
  const double n = static_cast<double>(k.n);
  const double x0n = x0.norm();
  const double growth = 3.0 * k.lambda * k.lambda * ((x_star + x0).squaredNorm() + 2.0 * x0n * x0n) +
                        8.0 * k.lambda / n * k.sum_norms * (x_star.norm() + 2.0 * x0n) +
                        6.0 / n * k.sum_sq_norms;
  const double raw = std::ceil((x_star - x0).squaredNorm() * growth / (6.0 * eps * eps)) - 1.0;
  return raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
}

std::size_t svm_iteration_budget(const SvmInstance& inst, const Vector& x_star, const Vector& x0,
                                 double eps) {
  require_dimension(x_star, inst.dimension());
  return svm_iteration_budget(svm_constants(inst), x_star, x0, eps);
}

}  // namespace relmirror
