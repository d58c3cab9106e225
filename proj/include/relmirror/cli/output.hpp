#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include <json.hpp>

#include "relmirror/solvers.hpp"

namespace relmirror::cli {

// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

// Writes to a sibling temporary file and renames it into place.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// Header iter,t,f_x,f_bar,f_hat,f_best; f_hat is empty when absent.
std::string trace_to_csv(const Trace& trace);
nlohmann::json trace_to_json(const Trace& trace);

}  // namespace relmirror::cli
