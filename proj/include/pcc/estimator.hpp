// SPDX-License-Identifier: Apache-2.0
//
// Polarity coincidence correlation (PCC) estimates.
//
// Real:    r = sin((pi/2) * (1/N) sum s_xi s_yi)
// Complex: r_R = sin((pi/4N) sum [s_xR s_yR + s_xI s_yI])
//          r_I = sin((pi/4N) sum [s_xI s_yR - s_xR s_yI])

#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "pcc/corr_matrix.hpp"
#include "pcc/signs.hpp"

namespace pcc {

inline constexpr double kHalfPi = std::numbers::pi / 2.0;
inline constexpr double kQuarterPi = std::numbers::pi / 4.0;

struct ComplexPccPair {
  double r_hat_re = 0.0;
  double r_hat_im = 0.0;
  double alpha = 0.0;  // sine argument of r_hat_re, in [-pi/2, pi/2]
  double beta = 0.0;   // sine argument of r_hat_im

  std::complex<double> value() const { return {r_hat_re, r_hat_im}; }
};

/// Integer sign-product sums of a complex pair; both are even and lie in [-2N, 2N].
struct ComplexSignSums {
  long long re = 0;  // sum s_aR s_bR + s_aI s_bI
  long long im = 0;  // sum s_aI s_bR - s_aR s_bI
};

namespace detail {

/// sin((pi/2) * (2A - N) / N) for A agreements out of N.
double pcc_from_agreements(std::size_t agreements, std::size_t n);
/// sin((pi/4) * sum / N).
double complex_component(long long sum, std::size_t n);
double complex_argument(long long sum, std::size_t n);

}  // namespace detail

double pcc_real(const SignSequence& a, const SignSequence& b);

ComplexSignSums complex_sign_sums(const ComplexSignSequence& a, const ComplexSignSequence& b);
ComplexPccPair pcc_complex(const ComplexSignSequence& a, const ComplexSignSequence& b);

/// Element-wise PCC matrix. Pairs are computed in parallel (workers <= 0
/// means the OpenMP default); output does not depend on the worker count.
CorrMatrix pcc_matrix_real(std::span<const SignSequence> seqs, int workers = 0);
CorrMatrix pcc_matrix_complex(std::span<const ComplexSignSequence> seqs, int workers = 0);

/// Pearson correlation matrix of p channels (each channel a vector of N samples).
CorrMatrix sample_corr_matrix(std::span<const std::vector<double>> channels);
CorrMatrix sample_corr_matrix(std::span<const std::vector<std::complex<double>>> channels);

}  // namespace pcc
