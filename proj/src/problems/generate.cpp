#include "relmirror/problems/generate.hpp"

#include <Eigen/QR>

#include <cmath>

#include "relmirror/rng.hpp"

namespace relmirror {

namespace {

Matrix gaussian_matrix(Index rows, Index cols, double scale, Rng& rng) {
  Matrix out(rows, cols);
  // Fill row by row so the draw order does not depend on Eigen's storage order.
  for (Index i = 0; i < rows; ++i)
    for (Index j = 0; j < cols; ++j) out(i, j) = scale * rng.normal();
  return out;
}

Matrix random_orthogonal(Index m, Rng& rng) {
  const Matrix g = gaussian_matrix(m, m, 1.0, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  // Fix column signs with diag(R) so Q is Haar distributed.
  const Matrix r = qr.matrixQR();
  for (Index j = 0; j < m; ++j) {
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  }
  return q;
}

}  // namespace

SvmInstance generate_svm(const SvmGenParams& p, std::uint64_t seed) {
  if (p.n < 1 || p.m < 1) throw InvalidInput("SVM generator needs n, m >= 1");
  if (!(p.feature_scale >= 0.0) || !(p.label_noise >= 0.0 && p.label_noise <= 1.0)) {
    throw InvalidInput("SVM generator: bad feature_scale or label_noise");
  }
  Rng rng(seed);
  const auto n = static_cast<Index>(p.n);
  const auto m = static_cast<Index>(p.m);
  Vector hidden(m);
  for (Index j = 0; j < m; ++j) hidden[j] = rng.normal();
  Matrix features = gaussian_matrix(n, m, p.feature_scale, rng);
  Vector labels(n);
  for (Index i = 0; i < n; ++i) {
    double y = features.row(i).dot(hidden) >= 0.0 ? 1.0 : -1.0;
    if (rng.uniform() < p.label_noise) y = -y;
    labels[i] = y;
  }
  return SvmInstance(std::move(features), std::move(labels), p.lambda);
}

IepInstance generate_iep(const IepGenParams& p, std::uint64_t seed) {
  if (p.n < 1 || p.m < 1) throw InvalidInput("IEP generator needs n, m >= 1");
  if (!(p.eig_min >= 0.0 && p.eig_max >= p.eig_min)) {
    throw InvalidInput("IEP generator needs 0 <= eig_min <= eig_max");
  }
  if (!(p.b_scale >= 0.0) || !(p.c_scale >= 0.0) || !(p.slack_max >= 0.0)) {
    throw InvalidInput("IEP generator scales must be nonnegative");
  }
  const auto m = static_cast<Index>(p.m);
  if (p.feasible_point) require_dimension(*p.feasible_point, m);

  Rng rng(seed);
  std::vector<Quadratic> pieces;
  pieces.reserve(p.n);
  for (std::size_t i = 0; i < p.n; ++i) {
    const Matrix q = random_orthogonal(m, rng);
    Vector d(m);
    for (Index j = 0; j < m; ++j) d[j] = rng.uniform(p.eig_min, p.eig_max);
    Matrix a = q * d.asDiagonal() * q.transpose();
    a = 0.5 * (a + a.transpose());
    Vector b(m);
    for (Index j = 0; j < m; ++j) b[j] = p.b_scale * rng.normal();
    double c = -rng.uniform(0.0, p.c_scale);
    if (p.feasible_point) {
      const Vector& x = *p.feasible_point;
      c = -(0.5 * x.dot(a * x) + b.dot(x)) - rng.uniform(0.0, p.slack_max);
    }
    pieces.push_back({std::move(a), std::move(b), c});
  }
  return IepInstance(std::move(pieces));
}

}  // namespace relmirror
