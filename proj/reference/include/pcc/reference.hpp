// SPDX-License-Identifier: Apache-2.0
//
// Serial reference implementations. They share no code path with the
// production kernels beyond the sign-sequence container: sign sums are
// per-sample loops over +-1 values, configurations are decoded bit by bit,
// and eigenvalues come from Eigen's self-adjoint solver.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "pcc/corr_matrix.hpp"
#include "pcc/signs.hpp"

namespace pcc::reference {

/// sum_i a_i b_i by a per-sample loop.
long long sign_product_sum(const SignSequence& a, const SignSequence& b);
double sign_corr(const SignSequence& a, const SignSequence& b);

/// Ascending eigenvalues via Eigen (complex Hermitian solver in complex mode).
std::vector<double> eigenvalues(const CorrMatrix& m);

struct Tally {
  std::uint64_t total = 0;
  std::uint64_t violations = 0;
  double min_min_eig = 0.0;
  std::vector<std::uint64_t> violating;  // first max_kept violating indices (0 = all)
};

Tally enumerate_real(std::size_t p, std::size_t n, double tolerance, bool symmetry_reduce, std::size_t max_kept = 0);
Tally enumerate_complex(std::size_t p, std::size_t n, double tolerance, std::size_t max_kept = 0);

}  // namespace pcc::reference
