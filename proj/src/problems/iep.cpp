#include "relmirror/problems/iep.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace relmirror {

namespace {

void validate_piece(const Quadratic& q, Index m, std::size_t i) {
  const std::string tag = "IEP piece " + std::to_string(i + 1) + ": ";
  if (q.a.rows() != m || q.a.cols() != m) throw InvalidInput(tag + "A is not m x m");
  if (q.b.size() != m) throw DimensionMismatch(m, q.b.size());
  if (!q.a.allFinite() || !q.b.allFinite() || !std::isfinite(q.c)) {
    throw InvalidInput(tag + "non-finite data");
  }
  const double scale = std::max(1.0, q.a.cwiseAbs().maxCoeff());
  if ((q.a - q.a.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw InvalidInput(tag + "A is not symmetric");
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(q.a, Eigen::EigenvaluesOnly);
  const Vector& ev = eig.eigenvalues();
  const double norm = std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
  if (ev.minCoeff() < -1e-10 * norm) throw InvalidInput(tag + "A is not positive semidefinite");
}

}  // namespace

IepInstance::IepInstance(std::vector<Quadratic> quadratics) : pieces_(std::move(quadratics)) {
  if (pieces_.empty()) throw InvalidInput("IEP instance needs at least one quadratic");
  const Index m = pieces_.front().b.size();
  if (m < 1) throw InvalidInput("IEP dimension must be at least 1");
  for (std::size_t i = 0; i < pieces_.size(); ++i) validate_piece(pieces_[i], m, i);
}

double IepInstance::piece_value(std::size_t i, const Vector& x) const {
  const Quadratic& q = pieces_[i];
  return 0.5 * x.dot(q.a * x) + q.b.dot(x) + q.c;
}

std::size_t IepInstance::active_index(const Vector& x) const {
  require_dimension(x, dimension());
  std::size_t best = 0;
  double best_value = piece_value(0, x);
  for (std::size_t i = 1; i < pieces_.size(); ++i) {
    const double v = piece_value(i, x);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return best;
}

double IepInstance::objective(const Vector& x) const {
  return piece_value(active_index(x), x);
}

Vector IepInstance::subgradient(const Vector& x) const {
  const Quadratic& q = pieces_[active_index(x)];
  return q.a * x + q.b;
}

double spectral_norm_power(const Matrix& a, double rel_tol, int max_iterations) {
  const Index m = a.rows();
  if (m == 0 || a.cwiseAbs().maxCoeff() == 0.0) return 0.0;
  // Power iteration on A^2 is immune to the +-lambda sign ambiguity.
  Vector v = Vector::Ones(m) / std::sqrt(static_cast<double>(m));
  // Break symmetry so v is not orthogonal to the dominant eigenvector.
  for (Index i = 0; i < m; ++i) v[i] += 1e-3 * static_cast<double>(i + 1) / static_cast<double>(m);
  v.normalize();
  double estimate = 0.0;
  for (int it = 0; it < max_iterations; ++it) {
    Vector w = a * (a * v);
    const double next = std::sqrt(w.norm());
    if (next == 0.0) return 0.0;
    v = w / w.norm();
    if (std::abs(next - estimate) <= rel_tol * next) return next;
    estimate = next;
  }
  throw NumericalFailure("power iteration did not converge", 0.0, estimate);
}

double spectral_norm(const Matrix& a) {
  if (a.rows() > kSpectralEigenLimit) return spectral_norm_power(a);
  const Eigen::SelfAdjointEigenSolver<Matrix> eig(a, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().cwiseAbs().maxCoeff();
}

IepConstants iep_constants(const IepInstance& inst) {
  IepConstants out;
  double max_ab = 0.0;
  for (const Quadratic& q : inst.quadratics()) {
    const double norm = spectral_norm(q.a);
    out.sigma = std::max(out.sigma, norm * norm);
    max_ab = std::max(max_ab, (q.a * q.b).norm());
    out.gamma = std::max(out.gamma, q.b.squaredNorm());
  }
  out.rho = 2.0 * max_ab;
  return out;
}

PolyNormReference iep_reference(const IepInstance& inst) {
  const IepConstants k = iep_constants(inst);
  const double coeffs[] = {k.gamma, k.rho, k.sigma};
  return reference_from_growth_polynomial(coeffs);
}

std::size_t iep_iteration_budget(const IepConstants& k, const Vector& x_star, const Vector& x0,
                                 double eps) {
  require_dimension(x0, x_star.size());
  if (!std::isfinite(eps) || !(eps > 0.0)) throw InvalidInput("eps must be positive");
  const double x0n = x0.norm();
  const double growth = 3.0 * k.sigma * ((x_star + x0).squaredNorm() + 2.0 * x0n * x0n) +
                        4.0 * k.rho * (x_star.norm() + 2.0 * x0n) + 6.0 * k.gamma;
  const double raw = std::ceil((x_star - x0).squaredNorm() * growth / (6.0 * eps * eps)) - 1.0;
  return raw > 0.0 ? static_cast<std::size_t>(raw) : 0;
}

std::size_t iep_iteration_budget(const IepInstance& inst, const Vector& x_star, const Vector& x0,
                                 double eps) {
  require_dimension(x_star, inst.dimension());
  return iep_iteration_budget(iep_constants(inst), x_star, x0, eps);
}

}  // namespace relmirror
