#include "relmirror/cli/output.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include "relmirror/error.hpp"

namespace relmirror::cli {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  if (ec != std::errc()) throw Error("cannot format number");
  return std::string(buf.data(), end);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InvalidInput("cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.flush();
    if (!out) {
      std::error_code ignored;
      std::filesystem::remove(tmp, ignored);
      throw InvalidInput("cannot write " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw InvalidInput("cannot move output into place: " + path.string());
  }
}

std::string trace_to_csv(const Trace& trace) {
  std::string out = "iter,t,f_x,f_bar,f_hat,f_best\n";
  for (const TraceRow& row : trace.rows) {
    out += std::to_string(row.iter);
    out += ',';
    out += format_double(row.step);
    out += ',';
    out += format_double(row.f_x);
    out += ',';
    out += format_double(row.f_bar);
    out += ',';
    if (row.f_hat) out += format_double(*row.f_hat);
    out += ',';
    out += format_double(row.f_best);
    out += '\n';
  }
  return out;
}

nlohmann::json trace_to_json(const Trace& trace) {
  nlohmann::json rows = nlohmann::json::array();
  for (const TraceRow& row : trace.rows) {
    rows.push_back({{"iter", row.iter},
                    {"t", row.step},
                    {"f_x", row.f_x},
                    {"f_bar", row.f_bar},
                    {"f_hat", row.f_hat ? nlohmann::json(*row.f_hat) : nlohmann::json(nullptr)},
                    {"f_best", row.f_best}});
  }
  return rows;
}

}  // namespace relmirror::cli
