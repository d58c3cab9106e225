#pragma once

#include <filesystem>
#include <string_view>

#include "relmirror/vector.hpp"

namespace relmirror {

struct LabeledData {
  Matrix features;  // n x m, dense
  Vector labels;    // +-1
};

// Parses `<label> <index>:<value> ...` lines. Indices are 1-based and strictly
// increasing within a line; m is the largest index seen and missing entries
// are zero. Labels must be "+1", "1" or "-1". Blank lines are skipped.
// Throws ParseError with the 1-based line number.
LabeledData parse_libsvm(std::string_view text);

LabeledData read_libsvm_file(const std::filesystem::path& path);

}  // namespace relmirror
