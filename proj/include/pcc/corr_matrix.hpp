// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

namespace pcc {

enum class Mode { real, complex };

std::string_view to_string(Mode mode);

/// Unit-diagonal Hermitian matrix (real symmetric in real mode).
///
/// Only the strict upper triangle is ever written; the lower triangle is
/// mirrored by conjugation so Hermitian symmetry is exact. The diagonal is
/// fixed at 1.
class CorrMatrix {
 public:
  static constexpr double kModulusSlack = 1e-12;

  static CorrMatrix identity(std::size_t p, Mode mode);

  /// Validates a row-major p*p array: unit diagonal, Hermitian within
  /// `hermitian_tol`, off-diagonal moduli <= 1. The lower triangle is then
  /// rebuilt from the upper one.
  static CorrMatrix from_entries(std::size_t p, Mode mode, std::span<const std::complex<double>> row_major,
                                 double hermitian_tol = 1e-12);

  std::size_t dim() const noexcept { return p_; }
  Mode mode() const noexcept { return mode_; }

  std::complex<double> operator()(std::size_t i, std::size_t j) const noexcept { return entries_[i * p_ + j]; }
  double real(std::size_t i, std::size_t j) const noexcept { return entries_[i * p_ + j].real(); }

  std::span<const std::complex<double>> entries() const noexcept { return entries_; }

  /// Sets (i, j) = v and (j, i) = conj(v). Requires i != j, |v| <= 1, and Im v == 0 in real mode.
  void set_off_diagonal(std::size_t i, std::size_t j, std::complex<double> v);

  friend bool operator==(const CorrMatrix&, const CorrMatrix&) = default;

 private:
  CorrMatrix(std::size_t p, Mode mode);

  std::size_t p_ = 0;
  Mode mode_ = Mode::real;
  std::vector<std::complex<double>> entries_;
};

}  // namespace pcc
