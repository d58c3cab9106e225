#pragma once

#include <Eigen/Dense>

#include <span>
#include <vector>

#include "relmirror/error.hpp"

namespace relmirror {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

// Throws InvalidInput if any entry is NaN or infinite.
void require_finite(const Vector& x, const char* what = "vector");

// Throws DimensionMismatch unless x has exactly `expected` entries.
void require_dimension(const Vector& x, Index expected);

Vector to_vector(std::span<const double> values);
std::vector<double> to_std(const Vector& x);

}  // namespace relmirror
