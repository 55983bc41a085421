// SPDX-License-Identifier: Apache-2.0

#include "pcc/corr_matrix.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pcc {

std::string_view to_string(Mode mode) { return mode == Mode::real ? "real" : "complex"; }

CorrMatrix::CorrMatrix(std::size_t p, Mode mode) : p_(p), mode_(mode), entries_(p * p) {
  if (p == 0) throw std::invalid_argument("matrix dimension must be at least 1");
  for (std::size_t i = 0; i < p; ++i) entries_[i * p + i] = 1.0;
}

CorrMatrix CorrMatrix::identity(std::size_t p, Mode mode) { return CorrMatrix(p, mode); }

CorrMatrix CorrMatrix::from_entries(std::size_t p, Mode mode, std::span<const std::complex<double>> row_major,
                                    double hermitian_tol) {
  if (row_major.size() != p * p) throw std::invalid_argument("expected " + std::to_string(p * p) + " entries");
  CorrMatrix m(p, mode);
  for (std::size_t i = 0; i < p; ++i) {
    const auto d = row_major[i * p + i];
    if (d != std::complex<double>(1.0, 0.0)) {
      throw std::invalid_argument("diagonal entry " + std::to_string(i) + " is not exactly 1");
    }
    for (std::size_t j = i + 1; j < p; ++j) {
      const auto upper = row_major[i * p + j];
      const auto lower = row_major[j * p + i];
      if (std::abs(upper - std::conj(lower)) > hermitian_tol) {
        throw std::invalid_argument("matrix is not Hermitian at (" + std::to_string(i) + ", " + std::to_string(j) +
                                    ")");
      }
      m.set_off_diagonal(i, j, upper);
    }
  }
  return m;
}

void CorrMatrix::set_off_diagonal(std::size_t i, std::size_t j, std::complex<double> v) {
  if (i >= p_ || j >= p_ || i == j) throw std::out_of_range("off-diagonal index out of range");
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw std::invalid_argument("non-finite matrix entry");
  if (mode_ == Mode::real && v.imag() != 0.0) throw std::invalid_argument("real-mode entry with imaginary part");
  if (std::abs(v) > 1.0 + kModulusSlack) throw std::invalid_argument("correlation modulus exceeds 1");
  // Exact zeros are stored as +0 on both sides of the diagonal.
  const double re = v.real() == 0.0 ? 0.0 : v.real();
  const double im = v.imag() == 0.0 ? 0.0 : v.imag();
  entries_[i * p_ + j] = {re, im};
  entries_[j * p_ + i] = {re, im == 0.0 ? 0.0 : -im};
}

}  // namespace pcc
