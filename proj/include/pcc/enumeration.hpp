// SPDX-License-Identifier: Apache-2.0
//
// Exhaustive PSD verification over every sign configuration at small (p, N),
// the fixed counterexamples, and the sample-duplication augmentation that
// lifts a counterexample from p to p + 1 channels.
//
// Configurations are numbered by reading the concatenated sign pattern
// (channel 0 sample 0 first, '+' = 1) as a binary number, most significant
// bit first. Complex samples contribute a (re, im) bit pair. With symmetry
// reduction in real mode channel 0 is fixed to all '+' and only the
// remaining (p - 1) N bits are enumerated.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pcc/corr_matrix.hpp"
#include "pcc/psd.hpp"
#include "pcc/signs.hpp"

namespace pcc {

class BudgetExceeded : public std::length_error {
 public:
  using std::length_error::length_error;
};

inline constexpr std::uint64_t kDefaultConfigBudget = std::uint64_t{1} << 32;
inline constexpr std::size_t kDefaultMaxWitnesses = 16;

struct EnumerationOptions {
  double tolerance = kDefaultPsdTolerance;
  bool symmetry_reduce = true;  // real mode only
  std::uint64_t budget = kDefaultConfigBudget;
  std::size_t max_witnesses = kDefaultMaxWitnesses;  // 0 keeps every violation
  int workers = 0;
};

struct Witness {
  std::uint64_t index = 0;
  std::vector<std::string> channels;  // "++--" (real) or "++ -+" (complex)
  CorrMatrix matrix = CorrMatrix::identity(1, Mode::real);
  std::vector<double> eigenvalues;
};

struct EnumerationSummary {
  std::size_t p = 0;
  std::size_t n = 0;
  Mode mode = Mode::real;
  bool symmetry_reduced = false;
  double tolerance = kDefaultPsdTolerance;
  std::uint64_t total_configs = 0;
  std::uint64_t violations = 0;
  double min_min_eig = 0.0;
  std::vector<Witness> witnesses;  // first violations in index order
};

/// Number of configurations, or throws BudgetExceeded.
std::uint64_t config_count(Mode mode, std::size_t p, std::size_t n, bool symmetry_reduce, std::uint64_t budget);

std::vector<SignSequence> real_configuration(std::size_t p, std::size_t n, std::uint64_t index, bool symmetry_reduce);
std::vector<ComplexSignSequence> complex_configuration(std::size_t p, std::size_t n, std::uint64_t index);

/// Inverse of real_configuration / complex_configuration.
std::uint64_t real_config_index(std::span<const SignSequence> seqs, bool symmetry_reduce);
std::uint64_t complex_config_index(std::span<const ComplexSignSequence> seqs);

EnumerationSummary enumerate_real(std::size_t p, std::size_t n, const EnumerationOptions& options = {});
EnumerationSummary enumerate_complex(std::size_t p, std::size_t n, const EnumerationOptions& options = {});

struct RealCounterexample {
  std::vector<SignSequence> seqs;
  CorrMatrix matrix;
  PsdReport report;
};

struct ComplexCounterexample {
  std::vector<ComplexSignSequence> seqs;
  CorrMatrix matrix;
  PsdReport report;
};

/// s_x = ++++, s_y = ++--, s_z = +++-, s_w = ++-+.
RealCounterexample table1_real();
/// s_x = (++, ++), s_y = (++, -+), s_z = (++, --).
ComplexCounterexample table1_complex();

/// Duplicates every sample, then appends a channel alternating +, -, +, ...
std::vector<SignSequence> augment_real(std::span<const SignSequence> seqs);
/// Same duplication; the appended channel alternates (+1+j), (-1-j).
std::vector<ComplexSignSequence> augment_complex(std::span<const ComplexSignSequence> seqs);

}  // namespace pcc
