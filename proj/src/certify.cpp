#include "relmirror/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "relmirror/problems/instance_io.hpp"

namespace relmirror {

SampleRegion SampleRegion::ball(double radius) {
  if (!std::isfinite(radius) || !(radius > 0.0)) throw InvalidInput("ball radius must be positive");
  SampleRegion r;
  r.kind = Kind::Ball;
  r.radius = radius;
  return r;
}

SampleRegion SampleRegion::box(double lo, double hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi) || !(hi > lo)) {
    throw InvalidInput("box needs finite lo < hi");
  }
  SampleRegion r;
  r.kind = Kind::Box;
  r.lo = lo;
  r.hi = hi;
  return r;
}

Vector SampleRegion::draw(Index dim, Rng& rng) const {
  Vector x(dim);
  if (kind == Kind::Box) {
    for (Index i = 0; i < dim; ++i) x[i] = rng.uniform(lo, hi);
    return x;
  }
  double norm = 0.0;
  do {
    for (Index i = 0; i < dim; ++i) x[i] = rng.normal();
    norm = x.norm();
  } while (norm == 0.0);
  const double r = radius * std::pow(rng.uniform(), 1.0 / static_cast<double>(dim));
  return x * (r / norm);
}

nlohmann::json SampleRegion::to_json() const {
  if (kind == Kind::Ball) return {{"type", "ball"}, {"radius", radius}};
  return {{"type", "box"}, {"lo", lo}, {"hi", hi}};
}

std::pair<Vector, Vector> draw_pair(const SampleRegion& region, Index dim, Rng& rng) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Vector x = region.draw(dim, rng);
    Vector y = region.draw(dim, rng);
    if ((y - x).norm() >= kMinPairDistance) return {std::move(x), std::move(y)};
  }
  throw InvalidInput("sampling region too small to draw distinct pairs");
}

nlohmann::json CertificationReport::to_json() const {
  nlohmann::json doc = {{"check", check},
                        {"region", region.to_json()},
                        {"seed", seed},
                        {"samples", samples_checked},
                        {"worst_ratio", worst_ratio},
                        {"claimed_bound", claimed_bound},
                        {"tolerance", tolerance},
                        {"pass", pass}};
  if (violating_pair) {
    doc["violating_pair"] = {{"x", vector_to_json(violating_pair->first)},
                             {"y", vector_to_json(violating_pair->second)}};
  }
  return doc;
}

namespace {

void require_samples(std::size_t n) {
  if (n < 1) throw InvalidInput("n_samples must be at least 1");
}

// Running worst-ratio reduction shared by every check.
class Tracker {
 public:
  Tracker(std::string check, const SampleRegion& region, std::uint64_t seed, double bound,
          double tolerance) {
    report_.check = std::move(check);
    report_.region = region;
    report_.seed = seed;
    report_.claimed_bound = bound;
    report_.tolerance = tolerance;
    report_.worst_ratio = -std::numeric_limits<double>::infinity();
  }

  void add(double ratio, const Vector& x, const Vector& y) {
    ++report_.samples_checked;
    if (ratio > report_.worst_ratio) {
      report_.worst_ratio = ratio;
      worst_ = {x, y};
    }
  }

  CertificationReport finish() {
    report_.pass =
        report_.worst_ratio <= report_.claimed_bound * (1.0 + report_.tolerance);
    if (!report_.pass) report_.violating_pair = std::move(worst_);
    return std::move(report_);
  }

 private:
  CertificationReport report_;
  std::pair<Vector, Vector> worst_;
};

double nondegenerate_bregman(const PolyNormReference& ref, const Vector& y, const Vector& x) {
  const double d = bregman(ref, y, x);
  if (!(d > 0.0)) throw ReferenceDegeneracy("D_h(y, x) == 0 for a pair with x != y");
  return d;
}

double positive(double v, const char* what) {
  if (!std::isfinite(v) || !(v > 0.0)) throw InvalidInput(std::string(what) + " must be positive");
  return v;
}

}  // namespace

CertificationReport check_relative_continuity(const Problem& problem, const PolyNormReference& ref,
                                              double m, const SampleRegion& region,
                                              std::size_t n_samples, std::uint64_t seed) {
  require_samples(n_samples);
  positive(m, "M");
  Tracker tracker("relative_continuity", region, seed, m * m, kCertifyTolerance);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, problem.dimension(), rng);
    const double d = nondegenerate_bregman(ref, y, x);
    const double g2 = problem.subgradient(x).squaredNorm();
    tracker.add(g2 * 0.5 * (y - x).squaredNorm() / d, x, y);
  }
  return tracker.finish();
}

CertificationReport check_key_property(const Problem& problem, const PolyNormReference& ref,
                                       double m, std::span<const double> t_values,
                                       const SampleRegion& region, std::size_t n_samples,
                                       std::uint64_t seed) {
  require_samples(n_samples);
  positive(m, "M");
  if (t_values.empty()) throw InvalidInput("key property check needs at least one t");
  for (double t : t_values) positive(t, "t");
  Tracker tracker("key_property", region, seed, 1.0, kCertifyTolerance);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, problem.dimension(), rng);
    const double d = bregman(ref, y, x);
    const double lin = problem.subgradient(x).dot(y - x);
    for (double t : t_values) tracker.add(-lin / (d / t + 0.5 * t * m * m), x, y);
  }
  return tracker.finish();
}

CertificationReport check_stochastic_boundedness(const StochasticProblem& problem,
                                                 const PolyNormReference& ref, double g_const,
                                                 const SampleRegion& region, std::size_t n_samples,
                                                 std::uint64_t seed) {
  require_samples(n_samples);
  positive(g_const, "G");
  Tracker tracker("stochastic_boundedness", region, seed, g_const * g_const, kCertifyTolerance);
  Rng rng(seed);
  const std::size_t n = problem.component_count();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, problem.dimension(), rng);
    const double d = nondegenerate_bregman(ref, y, x);
    double second_moment = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      second_moment += problem.component_subgradient(j, x).squaredNorm();
    }
    second_moment /= static_cast<double>(n);
    tracker.add(second_moment * 0.5 * (y - x).squaredNorm() / d, x, y);
  }
  return tracker.finish();
}

CertificationReport check_unbiasedness(const StochasticProblem& problem,
                                       const SampleRegion& region, std::size_t n_samples,
                                       std::uint64_t seed) {
  require_samples(n_samples);
  Tracker tracker("unbiasedness", region, seed, 0.0, 0.0);
  Rng rng(seed);
  const std::size_t n = problem.component_count();
  for (std::size_t s = 0; s < n_samples; ++s) {
    const Vector x = region.draw(problem.dimension(), rng);
    Vector mean = Vector::Zero(problem.dimension());
    for (std::size_t j = 0; j < n; ++j) mean += problem.component_subgradient(j, x);
    mean /= static_cast<double>(n);
    tracker.add((mean - problem.subgradient(x)).norm(), x, x);
  }
  return tracker.finish();
}

double estimate_relative_strong_convexity(const Problem& problem, const PolyNormReference& ref,
                                          const SampleRegion& region, std::size_t n_samples,
                                          std::uint64_t seed) {
  require_samples(n_samples);
  Rng rng(seed);
  double best = std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, problem.dimension(), rng);
    const double d = bregman(ref, y, x);
    if (!(d > 0.0)) continue;
    const double gap = problem.objective(y) - problem.objective(x) - problem.subgradient(x).dot(y - x);
    best = std::min(best, gap / d);
    ++used;
  }
  if (used == 0) throw ReferenceDegeneracy("every sampled pair had D_h == 0");
  return std::max(0.0, best);
}

double bregman_upper_bound(BregmanBoundKind kind, const Vector& y, const Vector& x) {
  require_dimension(y, x.size());
  const double d2 = (y - x).squaredNorm();
  if (kind == BregmanBoundKind::Cubic) return d2 * (y.norm() + 2.0 * x.norm()) / 3.0;
  return d2 * ((y + x).squaredNorm() + 2.0 * x.squaredNorm()) / 4.0;
}

PolyNormReference bregman_bound_reference(BregmanBoundKind kind) {
  return kind == BregmanBoundKind::Cubic ? PolyNormReference({0.0, 1.0})
                                         : PolyNormReference({0.0, 0.0, 1.0});
}

CertificationReport check_bregman_upper_bounds(BregmanBoundKind kind, Index dim,
                                               const SampleRegion& region, std::size_t n_samples,
                                               std::uint64_t seed) {
  require_samples(n_samples);
  if (dim < 1) throw InvalidInput("dimension must be at least 1");
  const PolyNormReference ref = bregman_bound_reference(kind);
  Tracker tracker(kind == BregmanBoundKind::Cubic ? "bregman_upper_cubic" : "bregman_upper_quartic",
                  region, seed, 1.0, kBoundTolerance);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, dim, rng);
    tracker.add(bregman(ref, y, x) / bregman_upper_bound(kind, y, x), x, y);
  }
  return tracker.finish();
}

CertificationReport check_bregman_lower_bound(const PolyNormReference& ref, Index dim,
                                              const SampleRegion& region, std::size_t n_samples,
                                              std::uint64_t seed) {
  require_samples(n_samples);
  if (dim < 1) throw InvalidInput("dimension must be at least 1");
  Tracker tracker("bregman_lower", region, seed, 1.0, kBoundTolerance);
  Rng rng(seed);
  for (std::size_t s = 0; s < n_samples; ++s) {
    const auto [x, y] = draw_pair(region, dim, rng);
    const double d = nondegenerate_bregman(ref, y, x);
    tracker.add(0.5 * (y - x).squaredNorm() * ref.growth(x.norm()) / d, x, y);
  }
  return tracker.finish();
}

}  // namespace relmirror
