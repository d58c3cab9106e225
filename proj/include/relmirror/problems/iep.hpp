#pragma once

#include <cstddef>
#include <vector>

#include "relmirror/geometry.hpp"
#include "relmirror/oracle.hpp"

namespace relmirror {

// One piece 0.5 x'Ax + b'x + c of the max function.
struct Quadratic {
  Matrix a;
  Vector b;
  double c = 0.0;
};

// Intersection of ellipsoids cast as f(x) = max_i {0.5 x'A_i x + b_i'x + c_i},
// i = 1..n. f(x) <= 0 iff x lies in every ellipsoid.
class IepInstance : public Problem {
 public:
  // Throws InvalidInput for empty lists, inconsistent shapes, non-finite data,
  // asymmetric A_i (beyond 1e-12) or A_i with an eigenvalue below -1e-10 ||A_i||.
  explicit IepInstance(std::vector<Quadratic> quadratics);

  const std::vector<Quadratic>& quadratics() const { return pieces_; }
  std::size_t piece_count() const { return pieces_.size(); }

  double piece_value(std::size_t i, const Vector& x) const;
  // Lowest index attaining the max.
  std::size_t active_index(const Vector& x) const;

  Index dimension() const override { return pieces_.front().b.size(); }
  double objective(const Vector& x) const override;
  // Gradient A_i x + b_i of the lowest-index active piece.
  Vector subgradient(const Vector& x) const override;

 private:
  std::vector<Quadratic> pieces_;
};

struct IepConstants {
  double sigma = 0.0;  // max_i ||A_i||_2^2
  double rho = 0.0;    // 2 max_i ||A_i b_i||
  double gamma = 0.0;  // max_i ||b_i||^2
};

IepConstants iep_constants(const IepInstance& inst);

// h = sigma/4 ||x||^4 + rho/3 ||x||^3 + gamma/2 ||x||^2 with M = 1.
// Throws InvalidPolynomial when all three constants vanish.
PolyNormReference iep_reference(const IepInstance& inst);

// ceil(||x*-x0||^2 (3 sigma (||x*+x0||^2 + 2||x0||^2) + 4 rho (||x*|| + 2||x0||)
//                   + 6 gamma) / (6 eps^2)) - 1, floored at 0.
std::size_t iep_iteration_budget(const IepConstants& constants, const Vector& x_star,
                                 const Vector& x0, double eps);
std::size_t iep_iteration_budget(const IepInstance& inst, const Vector& x_star, const Vector& x0,
                                 double eps);

// Spectral norm of a symmetric matrix: eigensolve up to kSpectralEigenLimit
// rows, power iteration above.
inline constexpr Index kSpectralEigenLimit = 64;
double spectral_norm(const Matrix& symmetric);
// Power iteration to the given relative tolerance.
double spectral_norm_power(const Matrix& symmetric, double rel_tol = 1e-10,
                           int max_iterations = 100000);

}  // namespace relmirror
