#include <doctest.h>

#include <cmath>

#include "relmirror/subproblem.hpp"
#include "test_support.hpp"

using namespace relmirror;
using relmirror::testing::vec;

TEST_CASE("solve_ls examples") {
  SUBCASE("quadratic reference gives -c") {
    const auto s = solve_ls(vec({2, -1}), PolyNormReference({1.0}));
    CHECK(s.theta == 1.0);
    CHECK(s.x_new == vec({-2, 1}));
    CHECK(s.residual <= 1e-10);
  }
  SUBCASE("cubic reference closed form") {
    // bisection oracle on 5 theta^2 - 1: 0.44721359549995793928
    const auto s = solve_ls(vec({4, 3}), PolyNormReference({0.0, 1.0}));
    CHECK(s.theta == doctest::Approx(0.44721359549995793928).epsilon(1e-14));
    CHECK(s.x_new[0] == doctest::Approx(-1.78885438199983175713).epsilon(1e-14));
    CHECK(s.x_new[1] == doctest::Approx(-1.34164078649987381785).epsilon(1e-14));
  }
  SUBCASE("mixed polynomial via Newton") {
    // a = [1, 0, 1], |c| = 3: phi = theta + 9 theta^3 - 1.
    // bisection oracle: 0.40447055425407654471
    const auto s = solve_ls(vec({3, 0}), PolyNormReference({1.0, 0.0, 1.0}));
    CHECK(s.theta == doctest::Approx(0.40447055425407654471).epsilon(1e-12));
    CHECK(s.x_new[0] == doctest::Approx(-1.21341166276222963413).epsilon(1e-12));
    CHECK(s.x_new[1] == 0.0);
    CHECK(s.residual <= 1e-12);
  }
  SUBCASE("root equation 3 theta + 9 theta^3 - 1") {
    // a = [3, 0, 1], |c| = 3. bisection oracle: 0.27257722462894116870
    const auto s = solve_ls(vec({3, 0}), PolyNormReference({3.0, 0.0, 1.0}));
    CHECK(s.theta == doctest::Approx(0.27257722462894116870).epsilon(1e-12));
    CHECK(s.x_new[0] == doctest::Approx(-0.81773167388682350609).epsilon(1e-12));
  }
  SUBCASE("zero linear term") {
    const auto s = solve_ls(Vector::Zero(3), PolyNormReference({0.2, 1.0, 3.0}));
    CHECK(s.x_new.norm() == 0.0);
    CHECK(s.theta == 0.0);
    CHECK(s.residual == 0.0);
  }
  CHECK_THROWS_AS(solve_ls(vec({1.0, NAN}), PolyNormReference({1.0})), InvalidInput);
}

TEST_CASE("mirror_update examples") {
  CHECK(mirror_update(vec({2}), vec({1}), 0.5, PolyNormReference({1.0})) == vec({1.5}));
  CHECK(mirror_update(vec({0}), vec({0}), 1.0, PolyNormReference({1.0})) == vec({0}));
  // Zero gradient is a fixed point: c = -(15, 20), theta = 1/5.
  const Vector fixed = mirror_update(vec({3, 4}), vec({0, 0}), 1.0, PolyNormReference({0.0, 1.0}));
  CHECK(fixed[0] == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(fixed[1] == doctest::Approx(4.0).epsilon(1e-14));

  CHECK_THROWS_AS(mirror_update(vec({1}), vec({1}), 0.0, PolyNormReference({1.0})), InvalidInput);
  CHECK_THROWS_AS(mirror_update(vec({1, 2}), vec({1}), 1.0, PolyNormReference({1.0})),
                  DimensionMismatch);
}

TEST_CASE("solve_ls residual and oracle agreement") {
  Rng rng(99);
  for (int s = 0; s < 10000; ++s) {
    const std::vector<double> a = relmirror::testing::random_coeffs(6, rng);
    const PolyNormReference ref(a);
    const Index dim = 1 + static_cast<Index>(rng.index(50));
    const Vector c = relmirror::testing::random_vector(dim, std::pow(10.0, rng.uniform(-2, 2)), rng);
    const LsSolution sol = solve_ls(c, ref);

    CHECK(sol.residual <= 1e-10);
    CHECK(sol.theta >= 0.0);
    CHECK((sol.x_new + sol.theta * c).norm() == 0.0);
    const double optimality = (c + ref.growth(sol.x_new.norm()) * sol.x_new).norm();
    CHECK(optimality <= 1e-8 * (1.0 + c.norm()));
    CHECK(std::abs(sol.theta - relmirror::testing::bisection_theta(a, c.norm())) <= 1e-9);
  }
}

TEST_CASE("solve_ls scale covariance") {
  Rng rng(5);
  for (int s = 0; s < 200; ++s) {
    const PolyNormReference ref(relmirror::testing::random_coeffs(4, rng));
    const Vector c = relmirror::testing::random_vector(4, 1.0, rng);
    const double lambda = std::pow(10.0, rng.uniform(-3, 3));
    const Vector x1 = solve_ls(c, ref).x_new;
    const Vector x2 = solve_ls(lambda * c, ref).x_new;
    // Both are nonnegative multiples of -c.
    CHECK(x1.dot(-c) >= 0.0);
    CHECK(x2.dot(-c) >= 0.0);
    CHECK(std::abs(x1.dot(x2)) == doctest::Approx(x1.norm() * x2.norm()).epsilon(1e-12));
  }
}

TEST_CASE("three-point property") {
  Rng rng(31337);
  for (int s = 0; s < 200; ++s) {
    const PolyNormReference ref(relmirror::testing::random_coeffs(4, rng));
    const Index dim = 1 + static_cast<Index>(rng.index(5));
    const Vector z = relmirror::testing::random_in_ball(dim, 3.0, rng);
    const Vector g = relmirror::testing::random_vector(dim, 2.0, rng);
    const double t = std::pow(10.0, rng.uniform(-2, 1));
    const Vector zp = mirror_update(z, g, t, ref);
    const double rhs_fixed = t * g.dot(zp) + bregman(ref, zp, z);
    for (int p = 0; p < 100; ++p) {
      const Vector x = relmirror::testing::random_in_ball(dim, 5.0, rng);
      const double lhs = t * g.dot(x) + bregman(ref, x, z);
      CHECK(lhs >= rhs_fixed + bregman(ref, x, zp) - 1e-9);
    }
  }
}
