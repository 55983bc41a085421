// SPDX-License-Identifier: Apache-2.0

#include "pcc/estimator.hpp"

#include "pcc/parallel.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pcc {

namespace detail {

double pcc_from_agreements(std::size_t agreements, std::size_t n) {
  const auto s = 2 * static_cast<long long>(agreements) - static_cast<long long>(n);
  return std::sin(kHalfPi * (static_cast<double>(s) / static_cast<double>(n)));
}

double complex_argument(long long sum, std::size_t n) {
  return kQuarterPi * (static_cast<double>(sum) / static_cast<double>(n));
}

double complex_component(long long sum, std::size_t n) { return std::sin(complex_argument(sum, n)); }

}  // namespace detail

namespace {

template <typename Seq>
void check_equal_lengths(std::span<const Seq> seqs) {
  if (seqs.empty()) throw std::invalid_argument("at least one channel is required");
  for (const auto& s : seqs) {
    if (s.size() != seqs.front().size()) {
      throw std::invalid_argument("channels differ in length: " + std::to_string(s.size()) + " vs " +
                                  std::to_string(seqs.front().size()));
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> upper_pairs(std::size_t p) {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  pairs.reserve(p * (p - 1) / 2);
  for (std::size_t i = 0; i < p; ++i)
    for (std::size_t j = i + 1; j < p; ++j) pairs.emplace_back(i, j);
  return pairs;
}

}  // namespace

double pcc_real(const SignSequence& a, const SignSequence& b) {
  return detail::pcc_from_agreements(agreement_count(a, b), a.size());
}

ComplexSignSums complex_sign_sums(const ComplexSignSequence& a, const ComplexSignSequence& b) {
  if (a.size() != b.size()) throw std::invalid_argument("complex sign sequences differ in length");
  const auto n = static_cast<long long>(a.size());
  const auto rr = static_cast<long long>(agreement_count(a.re(), b.re()));
  const auto ii = static_cast<long long>(agreement_count(a.im(), b.im()));
  const auto ir = static_cast<long long>(agreement_count(a.im(), b.re()));
  const auto ri = static_cast<long long>(agreement_count(a.re(), b.im()));
  // A sum of +-1 products over N samples with A agreements is 2A - N.
  return {(2 * rr - n) + (2 * ii - n), (2 * ir - n) - (2 * ri - n)};
}

ComplexPccPair pcc_complex(const ComplexSignSequence& a, const ComplexSignSequence& b) {
  const auto sums = complex_sign_sums(a, b);
  ComplexPccPair out;
  out.alpha = detail::complex_argument(sums.re, a.size());
  out.beta = detail::complex_argument(sums.im, a.size());
  out.r_hat_re = std::sin(out.alpha);
  out.r_hat_im = std::sin(out.beta);
  return out;
}

CorrMatrix pcc_matrix_real(std::span<const SignSequence> seqs, int workers) {
  check_equal_lengths(seqs);
  const std::size_t p = seqs.size();
  const auto pairs = upper_pairs(p);
  std::vector<double> values(pairs.size());
  const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(static) if (count > 16) num_threads(resolve_workers(workers))
  for (long long k = 0; k < count; ++k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    values[static_cast<std::size_t>(k)] = pcc_real(seqs[i], seqs[j]);
  }
  auto m = CorrMatrix::identity(p, Mode::real);
  for (std::size_t k = 0; k < pairs.size(); ++k) m.set_off_diagonal(pairs[k].first, pairs[k].second, values[k]);
  return m;
}

CorrMatrix pcc_matrix_complex(std::span<const ComplexSignSequence> seqs, int workers) {
  check_equal_lengths(seqs);
  const std::size_t p = seqs.size();
  const auto pairs = upper_pairs(p);
  std::vector<std::complex<double>> values(pairs.size());
  const auto count = static_cast<long long>(pairs.size());
#pragma omp parallel for schedule(static) if (count > 16) num_threads(resolve_workers(workers))
  for (long long k = 0; k < count; ++k) {
    const auto [i, j] = pairs[static_cast<std::size_t>(k)];
    values[static_cast<std::size_t>(k)] = pcc_complex(seqs[i], seqs[j]).value();
  }
  auto m = CorrMatrix::identity(p, Mode::complex);
  for (std::size_t k = 0; k < pairs.size(); ++k) m.set_off_diagonal(pairs[k].first, pairs[k].second, values[k]);
  return m;
}

namespace {

template <typename T>
CorrMatrix pearson(std::span<const std::vector<T>> channels, Mode mode) {
  check_equal_lengths(channels);
  const std::size_t p = channels.size();
  const std::size_t n = channels.front().size();
  if (n < 2) throw std::invalid_argument("sample correlation needs at least 2 samples");

  std::vector<std::vector<T>> centered(p);
  std::vector<double> norms(p);
  for (std::size_t c = 0; c < p; ++c) {
    T mean{};
    for (const auto& v : channels[c]) mean += v;
    mean /= static_cast<double>(n);
    centered[c].resize(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      centered[c][i] = channels[c][i] - mean;
      ss += std::norm(centered[c][i]);
    }
    if (!(ss > 0.0)) throw std::invalid_argument("channel " + std::to_string(c) + " has zero variance");
    norms[c] = std::sqrt(ss);
  }

  auto m = CorrMatrix::identity(p, mode);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      std::complex<double> acc{};
      for (std::size_t k = 0; k < n; ++k) {
        acc += std::complex<double>(centered[i][k]) * std::conj(std::complex<double>(centered[j][k]));
      }
      auto r = acc / (norms[i] * norms[j]);
      if (mode == Mode::real) r.imag(0.0);
      // Rounding can push |r| a hair past 1 for collinear channels.
      const double mod = std::abs(r);
      if (mod > 1.0) r /= mod;
      m.set_off_diagonal(i, j, r);
    }
  }
  return m;
}

}  // namespace

CorrMatrix sample_corr_matrix(std::span<const std::vector<double>> channels) {
  return pearson<double>(channels, Mode::real);
}

CorrMatrix sample_corr_matrix(std::span<const std::vector<std::complex<double>>> channels) {
  return pearson<std::complex<double>>(channels, Mode::complex);
}

}  // namespace pcc
