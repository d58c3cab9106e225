#include "relmirror/problems/libsvm.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <utility>
#include <vector>

namespace relmirror {

namespace {

bool is_space(char ch) { return ch == ' ' || ch == '\t' || ch == '\r'; }

std::vector<std::string_view> split_tokens(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !is_space(line[i])) ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_double(std::string_view token, std::size_t line, const char* what) {
  double value = 0.0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (first != last && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || !std::isfinite(value)) {
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(token) + "'");
  }
  return value;
}

}  // namespace

LabeledData parse_libsvm(std::string_view text) {
  struct Row {
    double label;
    std::vector<std::pair<long, double>> entries;
  };
  std::vector<Row> rows;
  long max_index = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tokens = split_tokens(line);
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    Row row;
    if (tokens[0] == "+1" || tokens[0] == "1") {
      row.label = 1.0;
    } else if (tokens[0] == "-1") {
      row.label = -1.0;
    } else {
      throw ParseError(line_no, "label '" + std::string(tokens[0]) + "' is not +1 or -1");
    }

    long prev = 0;
    for (std::size_t t = 1; t < tokens.size(); ++t) {
      const std::string_view tok = tokens[t];
      const auto colon = tok.find(':');
      if (colon == std::string_view::npos) {
        throw ParseError(line_no, "expected index:value, got '" + std::string(tok) + "'");
      }
      long index = 0;
      const auto idx = tok.substr(0, colon);
      const auto [ptr, ec] = std::from_chars(idx.data(), idx.data() + idx.size(), index);
      if (ec != std::errc() || ptr != idx.data() + idx.size() || index < 1) {
        throw ParseError(line_no, "bad index '" + std::string(idx) + "'");
      }
      if (index <= prev) throw ParseError(line_no, "indices must be strictly increasing");
      prev = index;
      row.entries.emplace_back(index, parse_double(tok.substr(colon + 1), line_no, "value"));
    }
    max_index = std::max(max_index, prev);
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }

  if (rows.empty()) throw ParseError(line_no, "no samples");
  if (max_index < 1) throw ParseError(line_no, "no features");

  LabeledData out{Matrix::Zero(static_cast<Index>(rows.size()), max_index),
                  Vector(static_cast<Index>(rows.size()))};
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto r = static_cast<Index>(i);
    out.labels[r] = rows[i].label;
    for (const auto& [index, value] : rows[i].entries) out.features(r, index - 1) = value;
  }
  return out;
}

LabeledData read_libsvm_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_libsvm(buf.str());
}

}  // namespace relmirror
