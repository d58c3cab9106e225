#include "relmirror/vector.hpp"

#include <string>

namespace relmirror {

void require_finite(const Vector& x, const char* what) {
  if (!x.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

void require_dimension(const Vector& x, Index expected) {
  if (x.size() != expected) throw DimensionMismatch(expected, x.size());
}

Vector to_vector(std::span<const double> values) {
  Vector out(static_cast<Index>(values.size()));
  for (std::size_t i = 0; i < values.size(); ++i) out[static_cast<Index>(i)] = values[i];
  return out;
}

std::vector<double> to_std(const Vector& x) { return {x.data(), x.data() + x.size()}; }

}  // namespace relmirror
