#include <doctest.h>

#include <cmath>
#include <vector>

#include "relmirror/geometry.hpp"
#include "test_support.hpp"

using namespace relmirror;
using relmirror::testing::vec;

TEST_CASE("h_eval") {
  CHECK(h_eval(PolyNormReference({1.0}), vec({3, 4})) == doctest::Approx(12.5).epsilon(1e-15));
  CHECK(h_eval(PolyNormReference({0.0, 1.0}), vec({3, 4})) ==
        doctest::Approx(125.0 / 3.0).epsilon(1e-15));
  CHECK(h_eval(PolyNormReference({0.3, 2.0, 0.0, 1.5}), Vector::Zero(4)) == 0.0);
  CHECK_THROWS_AS(h_eval(PolyNormReference({1.0}), vec({1.0, NAN})), InvalidInput);
  CHECK_THROWS_AS(h_eval(PolyNormReference({1.0}), vec({INFINITY})), InvalidInput);
}

TEST_CASE("h_grad") {
  CHECK(h_grad(PolyNormReference({1.0}), vec({2, -1})) == vec({2, -1}));
  const Vector g = h_grad(PolyNormReference({0.0, 1.0}), vec({3, 4}));
  CHECK(g[0] == doctest::Approx(15.0));
  CHECK(g[1] == doctest::Approx(20.0));
  CHECK(h_grad(PolyNormReference({2.0, 1.0, 1.0}), Vector::Zero(3)).norm() == 0.0);
  CHECK_THROWS_AS(h_grad(PolyNormReference({1.0}), vec({NAN})), InvalidInput);
}

TEST_CASE("bregman") {
  CHECK(bregman(PolyNormReference({1.0}), vec({1, 1}), vec({0, 0})) == doctest::Approx(1.0));
  CHECK(bregman(PolyNormReference({0.0, 1.0}), vec({2}), vec({1})) ==
        doctest::Approx(4.0 / 3.0).epsilon(1e-15));
  const PolyNormReference ref({0.5, 1.0, 0.25});
  const Vector x = vec({0.3, -7.0, 2.0});
  CHECK(bregman(ref, x, x) == 0.0);
  CHECK_THROWS_AS(bregman(ref, vec({1, 2}), x), DimensionMismatch);
}

TEST_CASE("reference_from_growth_polynomial") {
  const std::vector<double> quad{1.0};
  const auto ref = reference_from_growth_polynomial(quad);
  CHECK(ref.growth_coeffs() == quad);
  CHECK(ref.rel_cont_constant() == 1.0);

  // gamma, rho, sigma -> sigma/4 |x|^4 + rho/3 |x|^3 + gamma/2 |x|^2
  const std::vector<double> iep{1.0, 4.0, 4.0};
  const auto r2 = reference_from_growth_polynomial(iep);
  const Vector x = vec({0.6, 0.8, 1.0});
  const double n = x.norm();
  CHECK(h_eval(r2, x) == doctest::Approx(4.0 / 4 * std::pow(n, 4) + 4.0 / 3 * std::pow(n, 3) +
                                         1.0 / 2 * n * n));

  CHECK_THROWS_AS(reference_from_growth_polynomial(std::vector<double>{}), InvalidPolynomial);
  CHECK_THROWS_AS(reference_from_growth_polynomial(std::vector<double>{0.0, 0.0}), InvalidPolynomial);
  CHECK_THROWS_AS(reference_from_growth_polynomial(std::vector<double>{1.0, -0.1}), InvalidPolynomial);
  CHECK_THROWS_AS(PolyNormReference({1.0}, 0.0), InvalidInput);
}

TEST_CASE("scale_reference") {
  const PolyNormReference base({1.0}, 1.0);
  const auto same_f = scale_reference(base, 2.0, false);
  CHECK(same_f.growth_coeffs() == std::vector<double>{4.0});
  CHECK(same_f.rel_cont_constant() == 0.5);
  const auto scaled_f = scale_reference(base, 2.0, true);
  CHECK(scaled_f.growth_coeffs() == std::vector<double>{4.0});
  CHECK(scaled_f.rel_cont_constant() == 1.0);
  CHECK(scale_reference(PolyNormReference({0.3, 0.0, 2.0}, 1.7), 1.0, false) ==
        PolyNormReference({0.3, 0.0, 2.0}, 1.7));
  CHECK_THROWS_AS(scale_reference(base, 0.0, false), InvalidInput);
  CHECK_THROWS_AS(scale_reference(base, -1.0, true), InvalidInput);
}

TEST_CASE("sum_references") {
  const std::vector<PolyNormReference> two{PolyNormReference({1.0}), PolyNormReference({1.0})};
  const auto sum = sum_references(two);
  CHECK(sum.growth_coeffs() == std::vector<double>{2.0});
  CHECK(sum.rel_cont_constant() == doctest::Approx(std::sqrt(2.0)));

  const std::vector<PolyNormReference> one{PolyNormReference({0.5, 2.0}, 3.0)};
  CHECK(sum_references(one) == one.front());

  // beta = target / M_1 = 0.5, factor alpha^2 / beta^2 = 36.
  const std::vector<PolyNormReference> weighted{PolyNormReference({1.0, 0.5}, 2.0)};
  const std::vector<double> alpha{3.0};
  const auto w = sum_references(weighted, std::span<const double>(alpha), 1.0);
  CHECK(w.growth_coeffs()[0] == doctest::Approx(36.0));
  CHECK(w.growth_coeffs()[1] == doctest::Approx(18.0));
  CHECK(w.rel_cont_constant() == 1.0);

  // Different lengths are padded.
  const std::vector<PolyNormReference> mixed{PolyNormReference({1.0}), PolyNormReference({0.0, 0.0, 2.0})};
  CHECK(sum_references(mixed).growth_coeffs() == std::vector<double>{1.0, 0.0, 2.0});

  CHECK_THROWS_AS(sum_references(std::vector<PolyNormReference>{}), InvalidInput);
  const std::vector<double> wrong_len{1.0, 2.0};
  CHECK_THROWS_AS(sum_references(weighted, std::span<const double>(wrong_len), 1.0), InvalidInput);
  const std::vector<double> nonpositive{0.0};
  CHECK_THROWS_AS(sum_references(weighted, std::span<const double>(nonpositive), 1.0), InvalidInput);
  CHECK_THROWS_AS(sum_references(weighted, std::span<const double>(alpha), -1.0), InvalidInput);
}

TEST_CASE("bregman properties on random samples") {
  Rng rng(20240611);
  for (int s = 0; s < 1000; ++s) {
    const PolyNormReference ref(relmirror::testing::random_coeffs(6, rng));
    const Index dim = 1 + static_cast<Index>(rng.index(6));
    const Vector x = relmirror::testing::random_in_ball(dim, 10.0, rng);
    // Mix far pairs with near pairs where cancellation would bite.
    const double spread = rng.uniform() < 0.5 ? 10.0 : 1e-4;
    const Vector y = x + relmirror::testing::random_in_ball(dim, spread, rng);

    const double d = bregman(ref, y, x);
    const double hy = h_eval(ref, y);
    const double hx = h_eval(ref, x);
    CHECK(d >= -1e-12 * (1.0 + std::abs(hy) + std::abs(hx)));
    CHECK(bregman(ref, x, x) == 0.0);

    // Same value as the definition, up to the definition's own rounding.
    const double direct = bregman_direct(ref, y, x);
    CHECK(std::abs(d - direct) <= 1e-12 * (1.0 + std::abs(hy) + std::abs(hx) +
                                           std::abs(h_grad(ref, x).dot(y - x))));

    // AM-GM lower bound.
    const double lower = 0.5 * (y - x).squaredNorm() * ref.growth(x.norm());
    CHECK(d >= lower * (1.0 - 1e-12));
  }
}

TEST_CASE("h_grad matches central finite differences") {
  Rng rng(7);
  for (int s = 0; s < 1000; ++s) {
    const PolyNormReference ref(relmirror::testing::random_coeffs(4, rng));
    const Index dim = 1 + static_cast<Index>(rng.index(5));
    const Vector x = relmirror::testing::random_in_ball(dim, 10.0, rng);
    const Vector g = h_grad(ref, x);
    const double step = 1e-5 * std::max(1.0, x.norm());
    Vector fd(dim);
    for (Index i = 0; i < dim; ++i) {
      Vector xp = x, xm = x;
      xp[i] += step;
      xm[i] -= step;
      fd[i] = (h_eval(ref, xp) - h_eval(ref, xm)) / (2.0 * step);
    }
    CHECK((fd - g).norm() <= 1e-6 * std::max(1.0, g.norm()));
  }
}
