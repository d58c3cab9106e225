#pragma once

#include <optional>
#include <span>
#include <vector>

#include "relmirror/vector.hpp"

namespace relmirror {

// Reference function of polynomial-norm form
//
//   h(x) = sum_i a_i / (i + 2) * ||x||_2^(i + 2),
//
// built from the nonnegative growth polynomial p(s) = sum_i a_i s^i that bounds
// the squared subgradient norm. Carries the relative-continuity constant M that
// certifies the associated objective against this h.
class PolyNormReference {
 public:
  // Throws InvalidPolynomial for negative, non-finite, or all-zero coefficients,
  // and InvalidInput if rel_cont_constant is not positive.
  PolyNormReference(std::vector<double> growth_coeffs, double rel_cont_constant = 1.0);

  const std::vector<double>& growth_coeffs() const { return coeffs_; }
  double rel_cont_constant() const { return m_; }
  // Highest index with a nonzero coefficient.
  std::size_t degree() const;

  // p(s) = sum_i a_i s^i, the scalar multiplying x in the gradient.
  double growth(double norm) const;

  bool operator==(const PolyNormReference&) const = default;

 private:
  std::vector<double> coeffs_;
  double m_;
};

double h_eval(const PolyNormReference& ref, const Vector& x);

// (sum_i a_i ||x||^i) * x
Vector h_grad(const PolyNormReference& ref, const Vector& x);

// D_h(y, x) = h(y) - h(x) - <grad h(x), y - x>.
//
// Evaluated per term through the factorization
//   (i+2) D_i = (b-a)^2 q_i(a,b) + (i+2)/2 a^i ||y-x||^2,   a = ||x||, b = ||y||,
// which has no cancellation between large h values when y is near x. Both
// terms are nonnegative, so the result is nonnegative and zero when y == x.
double bregman(const PolyNormReference& ref, const Vector& y, const Vector& x);

// Same quantity straight from the definition. Kept for cross-checks.
double bregman_direct(const PolyNormReference& ref, const Vector& y, const Vector& x);

// Reference for an f with ||g(x)||^2 <= p(||x||); the certificate is M = 1.
PolyNormReference reference_from_growth_polynomial(std::span<const double> coeffs);

// Scales h by alpha^2. With scale_f == false the objective is unchanged and
// M becomes M / alpha; with scale_f == true the objective is alpha * f and M
// is unchanged.
PolyNormReference scale_reference(const PolyNormReference& ref, double alpha, bool scale_f);

// Reference for a sum of objectives.
//
// Without weights: coefficient-wise sum; M = sqrt(n) * max_j M_j (all M_j are
// expected to agree, and the max is valid for every term either way).
// With weights alpha_j and target_M: h_j is scaled by (alpha_j M_j / target_M)^2
// before summing and M = sqrt(n) * target_M; this certifies sum_j alpha_j f_j.
PolyNormReference sum_references(std::span<const PolyNormReference> refs,
                                 std::optional<std::span<const double>> weights = std::nullopt,
                                 std::optional<double> target_m = std::nullopt);

}  // namespace relmirror
