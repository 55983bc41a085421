// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pcc::cli {

/// Input error carrying a source location for the diagnostic.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Numeric CSV: one row per sample, comma-separated columns. Blank lines and
/// lines starting with '#' are skipped. All rows must have the same width.
struct NumericTable {
  std::size_t rows = 0;
  std::vector<std::vector<double>> columns;
};

NumericTable read_numeric_csv(std::istream& in, const std::string& source);

}  // namespace pcc::cli
