// SPDX-License-Identifier: Apache-2.0

#include "pcc/signs.hpp"

#include <bit>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace pcc {

namespace {

Word tail_mask(std::size_t n) {
  const std::size_t rem = n % kWordBits;
  return rem == 0 ? ~Word{0} : ((Word{1} << rem) - 1);
}

void check_same_length(const SignSequence& a, const SignSequence& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("sign sequences differ in length: " + std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
}

std::vector<int> parse_signs(std::string_view text) {
  std::vector<int> out;
  for (char c : text) {
    if (c == '+') {
      out.push_back(1);
    } else if (c == '-') {
      out.push_back(-1);
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      throw std::invalid_argument(std::string("unexpected character in sign string: '") + c + "'");
    }
  }
  return out;
}

}  // namespace

int sign(double x) {
  if (!std::isfinite(x)) throw std::domain_error("sign of a non-finite value");
  return x >= 0.0 ? 1 : -1;
}

ComplexSign sign_c(std::complex<double> x) { return {sign(x.real()), sign(x.imag())}; }

SignSequence SignSequence::pack(std::span<const int> signs) {
  if (signs.empty()) throw std::invalid_argument("cannot pack an empty sign list");
  std::vector<Word> words(words_for(signs.size()), 0);
  for (std::size_t i = 0; i < signs.size(); ++i) {
    if (signs[i] == 1) {
      words[i / kWordBits] |= Word{1} << (i % kWordBits);
    } else if (signs[i] != -1) {
      throw std::invalid_argument("sign values must be +1 or -1, got " + std::to_string(signs[i]));
    }
  }
  return SignSequence(std::move(words), signs.size());
}

SignSequence SignSequence::from_samples(std::span<const double> samples) {
  std::vector<int> s(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) s[i] = sign(samples[i]);
  return pack(s);
}

SignSequence SignSequence::from_string(std::string_view text) { return pack(parse_signs(text)); }

SignSequence SignSequence::from_words(std::vector<Word> words, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sign sequence length must be at least 1");
  if (words.size() != words_for(n)) throw std::invalid_argument("word count does not match sequence length");
  words.back() &= tail_mask(n);
  return SignSequence(std::move(words), n);
}

SignSequence SignSequence::complement() const {
  std::vector<Word> w(words_.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = ~words_[i];
  return from_words(std::move(w), n_);
}

SignSequence SignSequence::permuted(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw std::invalid_argument("permutation length does not match sequence length");
  std::vector<Word> w(words_.size(), 0);
  for (std::size_t k = 0; k < n_; ++k) {
    if (order[k] >= n_) throw std::out_of_range("permutation index out of range");
    if (at(order[k]) == 1) w[k / kWordBits] |= Word{1} << (k % kWordBits);
  }
  return SignSequence(std::move(w), n_);
}

SignSequence SignSequence::duplicated() const {
  const std::size_t m = 2 * n_;
  std::vector<Word> w(words_for(m), 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (at(i) == 1) {
      w[(2 * i) / kWordBits] |= Word{1} << ((2 * i) % kWordBits);
      w[(2 * i + 1) / kWordBits] |= Word{1} << ((2 * i + 1) % kWordBits);
    }
  }
  return SignSequence(std::move(w), m);
}

std::string SignSequence::to_string() const {
  std::string s(n_, '-');
  for (std::size_t i = 0; i < n_; ++i)
    if (at(i) == 1) s[i] = '+';
  return s;
}

ComplexSignSequence::ComplexSignSequence(SignSequence re, SignSequence im) : re_(std::move(re)), im_(std::move(im)) {
  if (re_.size() != im_.size()) throw std::invalid_argument("real and imaginary sign planes differ in length");
}

ComplexSignSequence ComplexSignSequence::pack(std::span<const ComplexSign> signs) {
  std::vector<int> re(signs.size()), im(signs.size());
  for (std::size_t i = 0; i < signs.size(); ++i) {
    re[i] = signs[i].re;
    im[i] = signs[i].im;
  }
  return {SignSequence::pack(re), SignSequence::pack(im)};
}

ComplexSignSequence ComplexSignSequence::from_samples(std::span<const std::complex<double>> samples) {
  std::vector<ComplexSign> s(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) s[i] = sign_c(samples[i]);
  return pack(s);
}

ComplexSignSequence ComplexSignSequence::from_string(std::string_view text) {
  const auto flat = parse_signs(text);
  if (flat.size() % 2 != 0) throw std::invalid_argument("complex sign string needs an even number of signs");
  std::vector<ComplexSign> s(flat.size() / 2);
  for (std::size_t i = 0; i < s.size(); ++i) s[i] = {flat[2 * i], flat[2 * i + 1]};
  return pack(s);
}

ComplexSignSequence ComplexSignSequence::permuted(std::span<const std::size_t> order) const {
  return {re_.permuted(order), im_.permuted(order)};
}

ComplexSignSequence ComplexSignSequence::duplicated() const { return {re_.duplicated(), im_.duplicated()}; }

std::string ComplexSignSequence::to_string() const {
  std::string s;
  s.reserve(3 * size());
  for (std::size_t i = 0; i < size(); ++i) {
    if (i) s.push_back(' ');
    s.push_back(re_.at(i) == 1 ? '+' : '-');
    s.push_back(im_.at(i) == 1 ? '+' : '-');
  }
  return s;
}

namespace kernels {

std::size_t agreement_count(std::span<const Word> a, std::span<const Word> b, std::size_t n) noexcept {
  const std::size_t full = n / kWordBits;
  std::size_t mismatches = 0;
  for (std::size_t w = 0; w < full; ++w) mismatches += static_cast<std::size_t>(std::popcount(a[w] ^ b[w]));
  if (n % kWordBits != 0) mismatches += static_cast<std::size_t>(std::popcount((a[full] ^ b[full]) & tail_mask(n)));
  return n - mismatches;
}

}  // namespace kernels

std::size_t agreement_count(const SignSequence& a, const SignSequence& b) {
  check_same_length(a, b);
  return kernels::agreement_count(a.words(), b.words(), a.size());
}

double sign_corr(const SignSequence& a, const SignSequence& b) {
  const auto agree = static_cast<long long>(agreement_count(a, b));
  const auto n = static_cast<long long>(a.size());
  return static_cast<double>(2 * agree - n) / static_cast<double>(n);
}

}  // namespace pcc
