#pragma once

#include "relmirror/geometry.hpp"
#include "relmirror/vector.hpp"

namespace relmirror {

// Minimizer of <c, x> + h(x) over R^n. Always of the form x_new = -theta * c.
struct LsSolution {
  Vector x_new;
  double theta = 0.0;
  // |phi(theta)| for the root equation below; 0 when c == 0.
  double residual = 0.0;
};

inline constexpr double kRootTolerance = 1e-12;
inline constexpr int kMaxRootIterations = 200;

// Solves the linearization subproblem min_x <c, x> + h(x).
//
// For c != 0, theta is the unique positive root of
//   phi(theta) = sum_i a_i ||c||^i theta^(i+1) - 1,
// which is strictly increasing and convex on theta >= 0. One-term polynomials
// with only a_0 or only a_1 use the closed form; everything else runs Newton
// from the right end of the bracket [0, min_i (a_i ||c||^i)^(-1/(i+1))] with a
// bisection fallback, stopping at |phi| <= kRootTolerance.
//
// Throws InvalidInput for non-finite c and NumericalFailure (carrying the last
// bracket) if the root is not found within kMaxRootIterations.
LsSolution solve_ls(const Vector& c, const PolyNormReference& ref);

// One mirror descent step from x_cur with subgradient g and step t:
//   argmin_x <g, x - x_cur> + (1/t) D_h(x, x_cur) = solve_ls(t g - grad h(x_cur)).x_new
Vector mirror_update(const Vector& x_cur, const Vector& g, double t, const PolyNormReference& ref);

}  // namespace relmirror
