#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>

#include "relmirror/problems/iep.hpp"
#include "relmirror/problems/svm.hpp"

namespace relmirror {

struct SvmGenParams {
  std::size_t n = 20;
  std::size_t m = 5;
  double lambda = 1.0;
  // Features are N(0, feature_scale^2).
  double feature_scale = 1.0;
  // Labels come from a hidden linear separator, each flipped with this probability.
  double label_noise = 0.1;
};

struct IepGenParams {
  std::size_t n = 5;
  std::size_t m = 3;
  // A_i = Q_i D_i Q_i' with D_i uniform on [eig_min, eig_max], Q_i random orthogonal.
  double eig_min = 0.5;
  double eig_max = 2.0;
  // b_i ~ N(0, b_scale^2), c_i ~ -U(0, c_scale) unless feasible_point is set.
  double b_scale = 1.0;
  double c_scale = 1.0;
  // When set, c_i is shifted so the point satisfies every piece with a slack
  // drawn from U(0, slack_max); f(point) <= 0.
  std::optional<Vector> feasible_point;
  double slack_max = 1.0;
};

// Reproducible for a fixed seed. Throw InvalidInput for invalid parameters.
SvmInstance generate_svm(const SvmGenParams& params, std::uint64_t seed);
IepInstance generate_iep(const IepGenParams& params, std::uint64_t seed);

}  // namespace relmirror
