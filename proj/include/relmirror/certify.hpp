#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>

#include <json.hpp>

#include "relmirror/geometry.hpp"
#include "relmirror/oracle.hpp"
#include "relmirror/rng.hpp"

namespace relmirror {

// Bounded region the certification samples from. Suprema over all of R^n
// cannot be sampled, so every report is relative to one of these.
struct SampleRegion {
  enum class Kind { Ball, Box };

  Kind kind = Kind::Ball;
  double radius = 10.0;  // Ball: Euclidean ball around the origin
  double lo = -10.0;     // Box: [lo, hi]^n
  double hi = 10.0;

  static SampleRegion ball(double radius);
  static SampleRegion box(double lo, double hi);

  // Uniform draw from the region.
  Vector draw(Index dim, Rng& rng) const;
  nlohmann::json to_json() const;
};

// Pairs closer than this are redrawn.
inline constexpr double kMinPairDistance = 1e-8;

// x and y independent and uniform in the region, ||y - x|| >= kMinPairDistance.
std::pair<Vector, Vector> draw_pair(const SampleRegion& region, Index dim, Rng& rng);

struct CertificationReport {
  std::string check;
  SampleRegion region;
  std::uint64_t seed = 0;
  std::size_t samples_checked = 0;
  // Largest sampled value of the normalized quantity compared to claimed_bound.
  double worst_ratio = 0.0;
  double claimed_bound = 0.0;
  double tolerance = 0.0;
  // pass == (worst_ratio <= claimed_bound * (1 + tolerance))
  bool pass = true;
  // (x, y) attaining worst_ratio; reported when the check fails.
  std::optional<std::pair<Vector, Vector>> violating_pair;

  nlohmann::json to_json() const;
};

inline constexpr double kCertifyTolerance = 1e-9;
inline constexpr double kBoundTolerance = 1e-12;

// Worst of ||g(x)||^2 * (1/2)||y-x||^2 / D_h(y,x) against M^2.
// Throws ReferenceDegeneracy if D_h(y,x) == 0 for a sampled pair.
CertificationReport check_relative_continuity(const Problem& problem, const PolyNormReference& ref,
                                              double m, const SampleRegion& region,
                                              std::size_t n_samples, std::uint64_t seed);

// (1/t) D_h(y,x) + <g(x), y-x> + (t/2) M^2 >= 0 for every pair and t, normalized
// as -<g(x), y-x> / ((1/t) D_h(y,x) + (t/2) M^2) <= 1.
CertificationReport check_key_property(const Problem& problem, const PolyNormReference& ref,
                                       double m, std::span<const double> t_values,
                                       const SampleRegion& region, std::size_t n_samples,
                                       std::uint64_t seed);

// Exact conditional second moment (1/n) sum_j ||g_j(x)||^2 in place of ||g(x)||^2,
// compared against G^2.
CertificationReport check_stochastic_boundedness(const StochasticProblem& problem,
                                                 const PolyNormReference& ref, double g_const,
                                                 const SampleRegion& region, std::size_t n_samples,
                                                 std::uint64_t seed);

// Max over sampled x of ||(1/n) sum_j g_j(x) - g(x)||; the bound is 0 and the
// check passes only on exact agreement.
CertificationReport check_unbiasedness(const StochasticProblem& problem,
                                       const SampleRegion& region, std::size_t n_samples,
                                       std::uint64_t seed);

// Sampled infimum of (f(y) - f(x) - <g(x), y-x>) / D_h(y,x), clamped at 0.
// Pairs with D_h == 0 are skipped; throws ReferenceDegeneracy if all are.
double estimate_relative_strong_convexity(const Problem& problem, const PolyNormReference& ref,
                                          const SampleRegion& region, std::size_t n_samples,
                                          std::uint64_t seed);

enum class BregmanBoundKind { Cubic, Quartic };

// Cubic (h = ||x||^3 / 3):   ||y-x||^2 (||y|| + 2||x||) / 3
// Quartic (h = ||x||^4 / 4): ||y-x||^2 (||y+x||^2 + 2||x||^2) / 4
double bregman_upper_bound(BregmanBoundKind kind, const Vector& y, const Vector& x);
PolyNormReference bregman_bound_reference(BregmanBoundKind kind);

// Worst D_h(y,x) / bound against 1 with kBoundTolerance.
CertificationReport check_bregman_upper_bounds(BregmanBoundKind kind, Index dim,
                                               const SampleRegion& region, std::size_t n_samples,
                                               std::uint64_t seed);

// Worst (1/2)||y-x||^2 (sum_i a_i ||x||^i) / D_h(y,x) against 1 with kBoundTolerance.
CertificationReport check_bregman_lower_bound(const PolyNormReference& ref, Index dim,
                                              const SampleRegion& region, std::size_t n_samples,
                                              std::uint64_t seed);

}  // namespace relmirror
