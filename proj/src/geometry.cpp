#include "relmirror/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace relmirror {

PolyNormReference::PolyNormReference(std::vector<double> growth_coeffs, double rel_cont_constant)
    : coeffs_(std::move(growth_coeffs)), m_(rel_cont_constant) {
  double total = 0.0;
  for (double a : coeffs_) {
    if (!std::isfinite(a) || a < 0.0) {
      throw InvalidPolynomial("growth coefficients must be finite and nonnegative");
    }
    total += a;
  }
  if (!(total > 0.0)) throw InvalidPolynomial("growth coefficients must not all be zero");
  if (!std::isfinite(m_) || !(m_ > 0.0)) {
    throw InvalidInput("relative continuity constant must be positive");
  }
}

std::size_t PolyNormReference::degree() const {
  std::size_t d = coeffs_.size() - 1;
  while (d > 0 && coeffs_[d] == 0.0) --d;
  return d;
}

double PolyNormReference::growth(double norm) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * norm + *it;
  return acc;
}

double h_eval(const PolyNormReference& ref, const Vector& x) {
  require_finite(x, "x");
  const double r = x.norm();
  double out = 0.0;
  double power = r * r;
  const auto& a = ref.growth_coeffs();
  for (std::size_t i = 0; i < a.size(); ++i) {
    out += a[i] / static_cast<double>(i + 2) * power;
    power *= r;
  }
  return out;
}

Vector h_grad(const PolyNormReference& ref, const Vector& x) {
  require_finite(x, "x");
  return ref.growth(x.norm()) * x;
}

namespace {

// q_p(a, b) = sum_{l=0}^{p-2} (p-1-l) b^l a^(p-2-l) - (p/2) a^(p-2), p = i + 2.
// This is (b^p + (p/2 - 1) a^p - (p/2) a^(p-2) b^2) / (b - a)^2, the AM-GM
// remainder in the Bregman distance of ||x||^p / p.
double amgm_quotient(int p, double a, double b) {
  double sum = 0.0;
  double bl = 1.0;
  for (int l = 0; l <= p - 2; ++l) {
    sum += static_cast<double>(p - 1 - l) * bl * std::pow(a, p - 2 - l);
    bl *= b;
  }
  return std::max(0.0, sum - 0.5 * p * std::pow(a, p - 2));
}

}  // namespace

double bregman(const PolyNormReference& ref, const Vector& y, const Vector& x) {
  require_dimension(y, x.size());
  require_finite(x, "x");
  require_finite(y, "y");
  const double a = x.norm();
  const double b = y.norm();
  const double d2 = (y - x).squaredNorm();
  // b - a = <y - x, y + x> / (a + b) avoids subtracting nearly equal norms.
  const double diff = (a + b) > 0.0 ? (y - x).dot(y + x) / (a + b) : 0.0;
  const double diff2 = diff * diff;

  const auto& coeffs = ref.growth_coeffs();
  double out = 0.0;
  double a_pow = 1.0;  // a^i
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (coeffs[i] != 0.0) {
      const int p = static_cast<int>(i) + 2;
      const double term = diff2 * amgm_quotient(p, a, b) + 0.5 * p * a_pow * d2;
      out += coeffs[i] * term / p;
    }
    a_pow *= a;
  }
  return out;
}

double bregman_direct(const PolyNormReference& ref, const Vector& y, const Vector& x) {
  require_dimension(y, x.size());
  return h_eval(ref, y) - h_eval(ref, x) - h_grad(ref, x).dot(y - x);
}

PolyNormReference reference_from_growth_polynomial(std::span<const double> coeffs) {
  if (coeffs.empty()) throw InvalidPolynomial("empty growth polynomial");
  return PolyNormReference(std::vector<double>(coeffs.begin(), coeffs.end()), 1.0);
}

PolyNormReference scale_reference(const PolyNormReference& ref, double alpha, bool scale_f) {
  if (!std::isfinite(alpha) || !(alpha > 0.0)) throw InvalidInput("alpha must be positive");
  std::vector<double> coeffs = ref.growth_coeffs();
  for (double& a : coeffs) a *= alpha * alpha;
  const double m = scale_f ? ref.rel_cont_constant() : ref.rel_cont_constant() / alpha;
  return PolyNormReference(std::move(coeffs), m);
}

PolyNormReference sum_references(std::span<const PolyNormReference> refs,
                                 std::optional<std::span<const double>> weights,
                                 std::optional<double> target_m) {
  if (refs.empty()) throw InvalidInput("sum_references needs at least one reference");
  if (weights.has_value() != target_m.has_value()) {
    throw InvalidInput("weights and target_M must be given together");
  }
  const double root_n = std::sqrt(static_cast<double>(refs.size()));

  std::size_t len = 0;
  for (const auto& r : refs) len = std::max(len, r.growth_coeffs().size());
  std::vector<double> coeffs(len, 0.0);

  if (!weights) {
    double m = 0.0;
    for (const auto& r : refs) {
      m = std::max(m, r.rel_cont_constant());
      const auto& a = r.growth_coeffs();
      for (std::size_t i = 0; i < a.size(); ++i) coeffs[i] += a[i];
    }
    return PolyNormReference(std::move(coeffs), root_n * m);
  }

  if (weights->size() != refs.size()) {
    throw InvalidInput("weights has " + std::to_string(weights->size()) + " entries, expected " +
                       std::to_string(refs.size()));
  }
  const double target = *target_m;
  if (!std::isfinite(target) || !(target > 0.0)) throw InvalidInput("target_M must be positive");
  for (std::size_t j = 0; j < refs.size(); ++j) {
    const double alpha = (*weights)[j];
    if (!std::isfinite(alpha) || !(alpha > 0.0)) throw InvalidInput("weights must be positive");
    const double beta = target / refs[j].rel_cont_constant();
    const double factor = (alpha * alpha) / (beta * beta);
    const auto& a = refs[j].growth_coeffs();
    for (std::size_t i = 0; i < a.size(); ++i) coeffs[i] += factor * a[i];
  }
  return PolyNormReference(std::move(coeffs), root_n * target);
}

}  // namespace relmirror
