#include "relmirror/subproblem.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace relmirror {

namespace {

// phi(theta) and phi'(theta), with each term evaluated as a_i theta (|c| theta)^i
// so that large |c| does not overflow before the product is formed.
struct RootEquation {
  const std::vector<double>& a;
  double cnorm;

  void eval(double theta, double& value, double& slope) const {
    const double u = cnorm * theta;
    double upow = 1.0;
    value = -1.0;
    slope = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] != 0.0) {
        value += a[i] * theta * upow;
        slope += static_cast<double>(i + 1) * a[i] * upow;
      }
      upow *= u;
    }
  }
};

// Newton steps past the tolerance while they still shrink |phi|, so the
// optimality residual |c| |phi| stays near rounding level for large |c|.
void polish(const RootEquation& phi, double& theta, double& value, double& slope) {
  for (int step = 0; step < 3 && value != 0.0; ++step) {
    const double next = theta - value / slope;
    double v = 0.0, s = 0.0;
    phi.eval(next, v, s);
    if (!(std::abs(v) < std::abs(value))) break;
    theta = next;
    value = v;
    slope = s;
  }
}

}  // namespace

LsSolution solve_ls(const Vector& c, const PolyNormReference& ref) {
  require_finite(c, "c");
  const double cnorm = c.norm();
  if (cnorm == 0.0) return {Vector::Zero(c.size()), 0.0, 0.0};

  const auto& a = ref.growth_coeffs();
  std::size_t nonzero = 0;
  std::size_t only = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != 0.0) {
      ++nonzero;
      only = i;
    }
  }

  RootEquation phi{a, cnorm};
  double value = 0.0, slope = 0.0;

  if (nonzero == 1 && only <= 1) {
    const double theta = only == 0 ? 1.0 / a[0] : 1.0 / std::sqrt(a[1] * cnorm);
    phi.eval(theta, value, slope);
    return {-theta * c, theta, std::abs(value)};
  }

  // Each term of phi(theta) + 1 is at most 1 at the root.
  double hi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0.0) continue;
    const double log_bound =
        -(std::log(a[i]) + static_cast<double>(i) * std::log(cnorm)) / static_cast<double>(i + 1);
    hi = std::min(hi, std::exp(log_bound));
  }
  double lo = 0.0;
  double theta = hi;

  for (int iter = 0; iter < kMaxRootIterations; ++iter) {
    phi.eval(theta, value, slope);
    if (std::abs(value) <= kRootTolerance) {
      polish(phi, theta, value, slope);
      return {-theta * c, theta, std::abs(value)};
    }
    if (value > 0.0) {
      hi = theta;
    } else {
      lo = theta;
    }
    double next = theta - value / slope;
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    if (next == theta) break;
    theta = next;
  }
  // Bracket collapsed to adjacent doubles or iterations exhausted.
  phi.eval(theta, value, slope);
  if (std::abs(value) <= kRootTolerance) return {-theta * c, theta, std::abs(value)};
  throw NumericalFailure("linearization subproblem root not found, |phi| = " +
                             std::to_string(std::abs(value)),
                         lo, hi);
}

Vector mirror_update(const Vector& x_cur, const Vector& g, double t, const PolyNormReference& ref) {
  require_dimension(g, x_cur.size());
  if (!std::isfinite(t) || !(t > 0.0)) throw InvalidInput("step size must be positive");
  return solve_ls(t * g - h_grad(ref, x_cur), ref).x_new;
}

}  // namespace relmirror
