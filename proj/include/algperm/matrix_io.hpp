#pragma once

// Plain-text matrix files: the first meaningful line holds n, then n rows of
// n whitespace-separated nonnegative decimals. Lines starting with '#' and
// blank lines are ignored.

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "algperm/errors.hpp"
#include "algperm/estimators.hpp"

namespace algperm {

inline InstanceMatrix parse_matrix(std::istream& in, const std::string& source = "<input>") {
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& what) -> InvalidInput {
    return InvalidInput(source + ":" + std::to_string(line_no) + ": " + what);
  };
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      const auto first = line.find_first_not_of(" \t\r");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  };
  if (!next_line()) throw fail("missing size line");
  int n = 0;
  {
    std::istringstream head(line);
    std::string extra;
    if (!(head >> n) || (head >> extra) || n < 1) throw fail("first line must be a single positive integer n");
  }
  std::vector<double> entries;
  entries.reserve(static_cast<std::size_t>(n) * n);
  for (int row = 0; row < n; ++row) {
    if (!next_line()) throw fail("expected " + std::to_string(n) + " rows, found " + std::to_string(row));
    std::istringstream fields(line);
    std::string token;
    int count = 0;
    while (fields >> token) {
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
      if (ec != std::errc() || ptr != token.data() + token.size()) throw fail("bad number '" + token + "'");
      if (!(v >= 0.0) || !std::isfinite(v)) throw fail("entries must be finite and nonnegative");
      entries.push_back(v);
      ++count;
    }
    if (count != n) throw fail("row has " + std::to_string(count) + " entries, expected " + std::to_string(n));
  }
  if (next_line()) throw fail("unexpected content after the last row");
  return InstanceMatrix(n, std::move(entries));
}

inline InstanceMatrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open matrix file '" + path + "'");
  return parse_matrix(in, path);
}

/// Shortest round-trip decimal.
inline std::string format_decimal(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

inline void write_matrix(std::ostream& out, const InstanceMatrix& a, const std::string& comment = "") {
  if (!comment.empty()) out << "# " << comment << '\n';
  out << a.n() << '\n';
  for (int i = 0; i < a.n(); ++i) {
    for (int j = 0; j < a.n(); ++j) out << (j ? " " : "") << format_decimal(a(i, j));
    out << '\n';
  }
}

inline void write_matrix_file(const std::string& path, const InstanceMatrix& a, const std::string& comment = "") {
  std::ofstream out(path);
  if (!out) throw InvalidInput("cannot write matrix file '" + path + "'");
  write_matrix(out, a, comment);
}

}  // namespace algperm
