// SPDX-License-Identifier: Apache-2.0

#include "pcc/enumeration.hpp"

#include <algorithm>
#include <limits>

#include "pcc/estimator.hpp"
#include "pcc/parallel.hpp"

namespace pcc {

namespace {

constexpr std::size_t kMaxIndexBits = 62;
constexpr std::uint64_t kMaxChunks = 1024;

Word low_mask(std::size_t bits) { return bits >= 64 ? ~Word{0} : ((Word{1} << bits) - 1); }

// Pattern bit (width-1-i) of v becomes sample i, i.e. LSB-first storage.
Word reverse_low_bits(Word v, std::size_t width) {
  Word out = 0;
  for (std::size_t i = 0; i < width; ++i) out |= ((v >> (width - 1 - i)) & 1u) << i;
  return out;
}

std::size_t index_bits(Mode mode, std::size_t p, std::size_t n, bool symmetry_reduce) {
  if (mode == Mode::real) return (symmetry_reduce ? p - 1 : p) * n;
  return 2 * p * n;
}

void check_shape(std::size_t p, std::size_t n) {
  if (p < 2) throw std::invalid_argument("enumeration needs p >= 2");
  if (n < 1) throw std::invalid_argument("enumeration needs N >= 1");
}

struct ChunkResult {
  std::uint64_t violations = 0;
  double min_eig = std::numeric_limits<double>::infinity();
  std::vector<std::uint64_t> witness_indices;
};

// Runs `evaluate(index) -> min eigenvalue` over [0, total) in fixed chunks
// and merges in chunk order, so the result does not depend on the schedule.
template <typename MakeEvaluator>
ChunkResult sweep(std::uint64_t total, double tolerance, std::size_t max_witnesses, int workers,
                  MakeEvaluator make_evaluator) {
  const std::uint64_t chunks = std::min<std::uint64_t>(total, kMaxChunks);
  const std::uint64_t chunk_size = (total + chunks - 1) / chunks;
  std::vector<ChunkResult> results(chunks);

#pragma omp parallel for schedule(dynamic, 1) num_threads(resolve_workers(workers))
  for (long long c = 0; c < static_cast<long long>(chunks); ++c) {
    auto evaluate = make_evaluator();
    ChunkResult& r = results[static_cast<std::size_t>(c)];
    const std::uint64_t lo = static_cast<std::uint64_t>(c) * chunk_size;
    const std::uint64_t hi = std::min(total, lo + chunk_size);
    for (std::uint64_t k = lo; k < hi; ++k) {
      const double m = evaluate(k);
      r.min_eig = std::min(r.min_eig, m);
      if (m < -tolerance) {
        ++r.violations;
        if (max_witnesses == 0 || r.witness_indices.size() < max_witnesses) r.witness_indices.push_back(k);
      }
    }
  }

  ChunkResult merged;
  for (auto& r : results) {
    merged.violations += r.violations;
    merged.min_eig = std::min(merged.min_eig, r.min_eig);
    for (auto k : r.witness_indices) {
      if (max_witnesses != 0 && merged.witness_indices.size() >= max_witnesses) break;
      merged.witness_indices.push_back(k);
    }
  }
  return merged;
}

// Evaluates real configurations directly on single-word channels.
class RealEvaluator {
 public:
  RealEvaluator(std::size_t p, std::size_t n, bool reduce)
      : p_(p), n_(n), reduce_(reduce), words_(p), a_(p * p), eig_(p), table_(n + 1) {
    for (std::size_t agree = 0; agree <= n; ++agree) table_[agree] = detail::pcc_from_agreements(agree, n);
  }

  double operator()(std::uint64_t index) {
    const std::size_t free = reduce_ ? p_ - 1 : p_;
    const std::size_t first = reduce_ ? 1 : 0;
    if (reduce_) words_[0] = low_mask(n_);
    for (std::size_t f = 0; f < free; ++f) {
      const Word v = (index >> ((free - 1 - f) * n_)) & low_mask(n_);
      words_[first + f] = reverse_low_bits(v, n_);
    }
    for (std::size_t i = 0; i < p_; ++i) {
      a_[i * p_ + i] = 1.0;
      for (std::size_t j = i + 1; j < p_; ++j) {
        const auto agree = kernels::agreement_count({&words_[i], 1}, {&words_[j], 1}, n_);
        a_[i * p_ + j] = a_[j * p_ + i] = table_[agree];
      }
    }
    jacobi_eigenvalues(a_, p_, eig_);
    return eig_[0];
  }

 private:
  std::size_t p_, n_;
  bool reduce_;
  std::vector<Word> words_;
  std::vector<double> a_, eig_, table_;
};

class ComplexEvaluator {
 public:
  ComplexEvaluator(std::size_t p, std::size_t n)
      : p_(p), n_(n), re_(p), im_(p), e_(4 * p * p), eig_(2 * p), table_(2 * n + 1) {
    // Sums are even in [-2N, 2N]; slot (sum + 2N) / 2.
    for (std::size_t k = 0; k <= 2 * n; ++k) {
      const long long sum = 2 * static_cast<long long>(k) - 2 * static_cast<long long>(n);
      table_[k] = detail::complex_component(sum, n);
    }
  }

  double operator()(std::uint64_t index) {
    const std::size_t width = 2 * n_;
    for (std::size_t c = 0; c < p_; ++c) {
      const Word v = (index >> ((p_ - 1 - c) * width)) & low_mask(width);
      Word re = 0, im = 0;
      for (std::size_t i = 0; i < n_; ++i) {
        re |= ((v >> (width - 1 - 2 * i)) & 1u) << i;
        im |= ((v >> (width - 2 - 2 * i)) & 1u) << i;
      }
      re_[c] = re;
      im_[c] = im;
    }
    const std::size_t m = 2 * p_;
    const auto n = static_cast<long long>(n_);
    for (std::size_t i = 0; i < p_; ++i) {
      e_[i * m + i] = e_[(i + p_) * m + (i + p_)] = 1.0;
      e_[i * m + (i + p_)] = e_[(i + p_) * m + i] = 0.0;
      for (std::size_t j = i + 1; j < p_; ++j) {
        auto agree = [&](Word x, Word y) {
          return static_cast<long long>(kernels::agreement_count({&x, 1}, {&y, 1}, n_));
        };
        const long long sum_re = 2 * (agree(re_[i], re_[j]) + agree(im_[i], im_[j])) - 2 * n;
        const long long sum_im = 2 * (agree(im_[i], re_[j]) - agree(re_[i], im_[j]));
        const double re = table_[static_cast<std::size_t>((sum_re + 2 * n) / 2)];
        const double im = table_[static_cast<std::size_t>((sum_im + 2 * n) / 2)];
        // [[A, -B], [B, A]] with entry (i, j) = re + j im and (j, i) its conjugate.
        e_[i * m + j] = e_[j * m + i] = re;
        e_[(i + p_) * m + (j + p_)] = e_[(j + p_) * m + (i + p_)] = re;
        e_[i * m + (j + p_)] = -im;
        e_[(j + p_) * m + i] = -im;
        e_[(i + p_) * m + j] = im;
        e_[j * m + (i + p_)] = im;
      }
    }
    jacobi_eigenvalues(e_, m, eig_);
    return 0.5 * (eig_[0] + eig_[1]);
  }

 private:
  std::size_t p_, n_;
  std::vector<Word> re_, im_;
  std::vector<double> e_, eig_, table_;
};

}  // namespace

std::uint64_t config_count(Mode mode, std::size_t p, std::size_t n, bool symmetry_reduce, std::uint64_t budget) {
  check_shape(p, n);
  const std::size_t bits = index_bits(mode, p, n, mode == Mode::real && symmetry_reduce);
  if (bits > kMaxIndexBits) {
    throw BudgetExceeded("search space of 2^" + std::to_string(bits) + " configurations exceeds the 2^" +
                         std::to_string(kMaxIndexBits) + " index limit");
  }
  const std::uint64_t total = std::uint64_t{1} << bits;
  if (total > budget) {
    throw BudgetExceeded("search space of 2^" + std::to_string(bits) + " configurations exceeds the budget of " +
                         std::to_string(budget) + " configurations");
  }
  return total;
}

std::vector<SignSequence> real_configuration(std::size_t p, std::size_t n, std::uint64_t index, bool symmetry_reduce) {
  check_shape(p, n);
  if (n > 64) throw std::invalid_argument("configuration decoding supports N <= 64");
  const std::size_t free = symmetry_reduce ? p - 1 : p;
  std::vector<SignSequence> seqs;
  seqs.reserve(p);
  if (symmetry_reduce) seqs.push_back(SignSequence::from_words({low_mask(n)}, n));
  for (std::size_t f = 0; f < free; ++f) {
    const Word v = (index >> ((free - 1 - f) * n)) & low_mask(n);
    seqs.push_back(SignSequence::from_words({reverse_low_bits(v, n)}, n));
  }
  return seqs;
}

std::vector<ComplexSignSequence> complex_configuration(std::size_t p, std::size_t n, std::uint64_t index) {
  check_shape(p, n);
  if (2 * n > 64) throw std::invalid_argument("configuration decoding supports N <= 32 in complex mode");
  const std::size_t width = 2 * n;
  std::vector<ComplexSignSequence> seqs;
  seqs.reserve(p);
  for (std::size_t c = 0; c < p; ++c) {
    const Word v = (index >> ((p - 1 - c) * width)) & low_mask(width);
    Word re = 0, im = 0;
    for (std::size_t i = 0; i < n; ++i) {
      re |= ((v >> (width - 1 - 2 * i)) & 1u) << i;
      im |= ((v >> (width - 2 - 2 * i)) & 1u) << i;
    }
    seqs.emplace_back(SignSequence::from_words({re}, n), SignSequence::from_words({im}, n));
  }
  return seqs;
}

std::uint64_t real_config_index(std::span<const SignSequence> seqs, bool symmetry_reduce) {
  if (seqs.size() < 2) throw std::invalid_argument("configuration needs p >= 2");
  const std::size_t n = seqs.front().size();
  const std::size_t first = symmetry_reduce ? 1 : 0;
  if (symmetry_reduce) {
    for (std::size_t i = 0; i < n; ++i) {
      if (seqs[0].at(i) != 1) throw std::invalid_argument("reduced configurations have channel 0 all '+'");
    }
  }
  if (index_bits(Mode::real, seqs.size(), n, symmetry_reduce) > kMaxIndexBits) {
    throw std::invalid_argument("configuration too large to index");
  }
  std::uint64_t index = 0;
  for (std::size_t c = first; c < seqs.size(); ++c) {
    if (seqs[c].size() != n) throw std::invalid_argument("channels differ in length");
    for (std::size_t i = 0; i < n; ++i) index = (index << 1) | (seqs[c].at(i) == 1 ? 1u : 0u);
  }
  return index;
}

std::uint64_t complex_config_index(std::span<const ComplexSignSequence> seqs) {
  if (seqs.size() < 2) throw std::invalid_argument("configuration needs p >= 2");
  const std::size_t n = seqs.front().size();
  if (index_bits(Mode::complex, seqs.size(), n, false) > kMaxIndexBits) {
    throw std::invalid_argument("configuration too large to index");
  }
  std::uint64_t index = 0;
  for (const auto& s : seqs) {
    if (s.size() != n) throw std::invalid_argument("channels differ in length");
    for (std::size_t i = 0; i < n; ++i) {
      index = (index << 1) | (s.re().at(i) == 1 ? 1u : 0u);
      index = (index << 1) | (s.im().at(i) == 1 ? 1u : 0u);
    }
  }
  return index;
}

EnumerationSummary enumerate_real(std::size_t p, std::size_t n, const EnumerationOptions& options) {
  const std::uint64_t total = config_count(Mode::real, p, n, options.symmetry_reduce, options.budget);
  const bool reduce = options.symmetry_reduce;
  const auto merged = sweep(total, options.tolerance, options.max_witnesses, options.workers,
                            [&] { return RealEvaluator(p, n, reduce); });

  EnumerationSummary s;
  s.p = p;
  s.n = n;
  s.mode = Mode::real;
  s.symmetry_reduced = reduce;
  s.tolerance = options.tolerance;
  s.total_configs = total;
  s.violations = merged.violations;
  s.min_min_eig = merged.min_eig;
  for (auto k : merged.witness_indices) {
    const auto seqs = real_configuration(p, n, k, reduce);
    Witness w;
    w.index = k;
    for (const auto& q : seqs) w.channels.push_back(q.to_string());
    w.matrix = pcc_matrix_real(seqs, 1);
    w.eigenvalues = eigvals_sym(w.matrix);
    s.witnesses.push_back(std::move(w));
  }
  return s;
}

EnumerationSummary enumerate_complex(std::size_t p, std::size_t n, const EnumerationOptions& options) {
  const std::uint64_t total = config_count(Mode::complex, p, n, false, options.budget);
  const auto merged = sweep(total, options.tolerance, options.max_witnesses, options.workers,
                            [&] { return ComplexEvaluator(p, n); });

  EnumerationSummary s;
  s.p = p;
  s.n = n;
  s.mode = Mode::complex;
  s.symmetry_reduced = false;
  s.tolerance = options.tolerance;
  s.total_configs = total;
  s.violations = merged.violations;
  s.min_min_eig = merged.min_eig;
  for (auto k : merged.witness_indices) {
    const auto seqs = complex_configuration(p, n, k);
    Witness w;
    w.index = k;
    for (const auto& q : seqs) w.channels.push_back(q.to_string());
    w.matrix = pcc_matrix_complex(seqs, 1);
    w.eigenvalues = eigvals_herm(w.matrix);
    s.witnesses.push_back(std::move(w));
  }
  return s;
}

RealCounterexample table1_real() {
  std::vector<SignSequence> seqs{SignSequence::from_string("++++"), SignSequence::from_string("++--"),
                                 SignSequence::from_string("+++-"), SignSequence::from_string("++-+")};
  auto matrix = pcc_matrix_real(seqs, 1);
  auto report = check_psd(matrix);
  return {std::move(seqs), std::move(matrix), std::move(report)};
}

ComplexCounterexample table1_complex() {
  std::vector<ComplexSignSequence> seqs{ComplexSignSequence::from_string("++ ++"),
                                        ComplexSignSequence::from_string("++ -+"),
                                        ComplexSignSequence::from_string("++ --")};
  auto matrix = pcc_matrix_complex(seqs, 1);
  auto report = check_psd(matrix);
  return {std::move(seqs), std::move(matrix), std::move(report)};
}

namespace {

std::vector<int> alternating(std::size_t length) {
  std::vector<int> s(length);
  for (std::size_t k = 0; k < length; ++k) s[k] = (k % 2 == 0) ? 1 : -1;
  return s;
}

}  // namespace

std::vector<SignSequence> augment_real(std::span<const SignSequence> seqs) {
  if (seqs.empty()) throw std::invalid_argument("augmentation needs at least one channel");
  std::vector<SignSequence> out;
  out.reserve(seqs.size() + 1);
  for (const auto& s : seqs) {
    if (s.size() != seqs.front().size()) throw std::invalid_argument("channels differ in length");
    out.push_back(s.duplicated());
  }
  out.push_back(SignSequence::pack(alternating(2 * seqs.front().size())));
  return out;
}

std::vector<ComplexSignSequence> augment_complex(std::span<const ComplexSignSequence> seqs) {
  if (seqs.empty()) throw std::invalid_argument("augmentation needs at least one channel");
  std::vector<ComplexSignSequence> out;
  out.reserve(seqs.size() + 1);
  for (const auto& s : seqs) {
    if (s.size() != seqs.front().size()) throw std::invalid_argument("channels differ in length");
    out.push_back(s.duplicated());
  }
  const auto alt = SignSequence::pack(alternating(2 * seqs.front().size()));
  out.emplace_back(alt, alt);
  return out;
}

}  // namespace pcc
