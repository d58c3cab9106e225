#pragma once

#include <filesystem>
#include <variant>

#include <json.hpp>

#include "relmirror/problems/iep.hpp"
#include "relmirror/problems/svm.hpp"

namespace relmirror {

using Instance = std::variant<SvmInstance, IepInstance>;

// Instance documents:
//   {"kind": "svm", "n": .., "m": .., "lambda": .., "features": [[row], ...], "labels": [..]}
//   {"kind": "iep", "n": .., "m": .., "quadratics": [{"A": [[row], ...], "b": [..], "c": ..}, ...]}
// Matrices are arrays of rows.
nlohmann::json instance_to_json(const SvmInstance& inst);
nlohmann::json instance_to_json(const IepInstance& inst);
nlohmann::json instance_to_json(const Instance& inst);

// Throws InvalidInput on schema violations.
Instance instance_from_json(const nlohmann::json& doc);

Instance load_instance(const std::filesystem::path& path);

nlohmann::json vector_to_json(const Vector& v);
Vector vector_from_json(const nlohmann::json& doc);
nlohmann::json matrix_to_json(const Matrix& a);
Matrix matrix_from_json(const nlohmann::json& doc);

}  // namespace relmirror
