// SPDX-License-Identifier: Apache-2.0
//
// Sign extraction and bit-packed sign sequences.
//
// A SignSequence stores N signs as packed 64-bit words, sample i at bit
// (i % 64) of word (i / 64). A set bit means +1, a clear bit means -1.
// Padding bits past N are always zero.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace pcc {

using Word = std::uint64_t;
inline constexpr std::size_t kWordBits = 64;

inline constexpr std::size_t words_for(std::size_t n) { return (n + kWordBits - 1) / kWordBits; }

/// +1 for x >= 0 (including -0.0), -1 otherwise. Throws std::domain_error on NaN/inf.
int sign(double x);

struct ComplexSign {
  int re;
  int im;
  friend bool operator==(const ComplexSign&, const ComplexSign&) = default;
};

/// Componentwise sign of a complex sample: sgn(Re x) + j sgn(Im x).
ComplexSign sign_c(std::complex<double> x);

class SignSequence {
 public:
  /// Signs must all be +1 or -1; the list must be non-empty.
  static SignSequence pack(std::span<const int> signs);
  static SignSequence from_samples(std::span<const double> samples);
  /// Parses '+' / '-' characters; whitespace is ignored.
  static SignSequence from_string(std::string_view text);
  /// Adopts raw words; bits at or beyond n are cleared.
  static SignSequence from_words(std::vector<Word> words, std::size_t n);

  std::size_t size() const noexcept { return n_; }
  std::span<const Word> words() const noexcept { return words_; }

  int at(std::size_t i) const noexcept { return ((words_[i / kWordBits] >> (i % kWordBits)) & 1u) ? 1 : -1; }

  SignSequence complement() const;
  /// Applies the sample permutation: result[k] = (*this)[order[k]].
  SignSequence permuted(std::span<const std::size_t> order) const;
  /// Every sample repeated twice in place (length 2N).
  SignSequence duplicated() const;
  std::string to_string() const;

  friend bool operator==(const SignSequence&, const SignSequence&) = default;

 private:
  SignSequence(std::vector<Word> words, std::size_t n) : n_(n), words_(std::move(words)) {}

  std::size_t n_ = 0;
  std::vector<Word> words_;
};

/// Two parallel bit planes holding the real-part and imaginary-part signs.
class ComplexSignSequence {
 public:
  ComplexSignSequence(SignSequence re, SignSequence im);

  static ComplexSignSequence pack(std::span<const ComplexSign> signs);
  static ComplexSignSequence from_samples(std::span<const std::complex<double>> samples);
  /// Pairs of '+'/'-' per sample ("++ -+" is (+1+j), (-1+j)); whitespace is ignored.
  static ComplexSignSequence from_string(std::string_view text);

  std::size_t size() const noexcept { return re_.size(); }
  const SignSequence& re() const noexcept { return re_; }
  const SignSequence& im() const noexcept { return im_; }
  ComplexSign at(std::size_t i) const noexcept { return {re_.at(i), im_.at(i)}; }

  ComplexSignSequence permuted(std::span<const std::size_t> order) const;
  ComplexSignSequence duplicated() const;
  std::string to_string() const;

  friend bool operator==(const ComplexSignSequence&, const ComplexSignSequence&) = default;

 private:
  SignSequence re_;
  SignSequence im_;
};

namespace kernels {

/// n - popcount(a XOR b) over the first n bits; the trailing partial word is masked.
std::size_t agreement_count(std::span<const Word> a, std::span<const Word> b, std::size_t n) noexcept;

}  // namespace kernels

/// Number of positions where a and b carry the same sign. Throws on length mismatch.
std::size_t agreement_count(const SignSequence& a, const SignSequence& b);

/// (1/N) sum a_i b_i, computed exactly as (2 * agreements - N) / N.
double sign_corr(const SignSequence& a, const SignSequence& b);

}  // namespace pcc
