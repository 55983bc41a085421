// SPDX-License-Identifier: Apache-2.0

#include "csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string_view>

namespace pcc::cli {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void fail(const std::string& source, std::size_t line, std::size_t column, const std::string& what) {
  throw InputError(source + ": line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what);
}

}  // namespace

NumericTable read_numeric_csv(std::istream& in, const std::string& source) {
  NumericTable table;
  std::string text;
  std::size_t line_no = 0;
  while (std::getline(in, text)) {
    ++line_no;
    const auto line = trim(text);
    if (line.empty() || line.front() == '#') continue;

    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      auto field = trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
      const std::size_t column = row.size() + 1;
      if (field.empty()) fail(source, line_no, column, "empty field");
      if (field.front() == '+') field.remove_prefix(1);
      double v = 0.0;
      const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
      if (ec != std::errc{} || ptr != field.data() + field.size()) {
        fail(source, line_no, column, "cannot parse '" + std::string(field) + "' as a number");
      }
      if (!std::isfinite(v)) fail(source, line_no, column, "non-finite value");
      row.push_back(v);
      if (comma == std::string_view::npos) break;
      start = comma + 1;
    }

    if (table.rows == 0) {
      table.columns.resize(row.size());
    } else if (row.size() != table.columns.size()) {
      fail(source, line_no, std::min(row.size(), table.columns.size()) + 1,
           "expected " + std::to_string(table.columns.size()) + " columns, found " + std::to_string(row.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) table.columns[c].push_back(row[c]);
    ++table.rows;
  }
  if (table.rows == 0) throw InputError(source + ": no data rows");
  return table;
}

}  // namespace pcc::cli
