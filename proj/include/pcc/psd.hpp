// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalues, PSD verdicts, and the closed-form 3x3 validity machinery:
// the determinant-derived range of r23 given r12, r13; the attainable
// range of the sign correlation rs23 given rs12, rs13; and the strip
// canonicalization that packs polarity coincidences with channel 0.

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pcc/corr_matrix.hpp"
#include "pcc/signs.hpp"

namespace pcc {

inline constexpr double kDefaultPsdTolerance = 1e-9;

/// Cyclic Jacobi on a row-major n*n symmetric matrix held in `a`, which is
/// destroyed. Writes the n eigenvalues to `eigenvalues` in ascending order.
void jacobi_eigenvalues(std::span<double> a, std::size_t n, std::span<double> eigenvalues);

/// Eigenvalues of the Hermitian matrix A + jB given as its 2p*2p real
/// embedding [[A, -B], [B, A]] in `embedded` (destroyed). Each eigenvalue
/// appears twice in the embedding; sorted neighbours are averaged.
void hermitian_eigenvalues_from_embedding(std::span<double> embedded, std::size_t p, std::span<double> eigenvalues);

std::vector<double> eigvals_sym(const CorrMatrix& m);
std::vector<double> eigvals_herm(const CorrMatrix& m);

struct PsdReport {
  std::vector<double> eigenvalues;  // ascending
  double min_eig = 0.0;
  bool is_psd = false;
  double tolerance = kDefaultPsdTolerance;
};

/// Uses eigvals_sym in real mode and eigvals_herm in complex mode.
PsdReport check_psd(const CorrMatrix& m, double tolerance = kDefaultPsdTolerance);

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x, double slack = 0.0) const { return x >= lo - slack && x <= hi + slack; }
};

/// Range of r23 keeping [[1, r12, r13], [r12, 1, r23], [r13, r23, 1]] PSD.
Interval valid_range_3x3(double r12, double r13);

/// Range of rs23 reachable by sign sequences with the given rs12, rs13.
/// Both inputs must lie on the grid {-1, -1 + 2/N, ..., 1}.
Interval sign_range(double rs12, double rs13, std::size_t n);

/// Determinant of the unit-diagonal 3x3 symmetric matrix, by cofactor expansion.
double det3_unit(double r12, double r13, double r23);

struct IdentityResiduals {
  double hi = 0.0;  // sin((pi/2)(1 - |rs12 - rs13|)) - [r12 r13 + sqrt((1 - r12^2)(1 - r13^2))]
  double lo = 0.0;  // sin((pi/2)(|rs12 + rs13| - 1)) - [r12 r13 - sqrt((1 - r12^2)(1 - r13^2))]
};

/// Residuals of the sine identities mapping sign_range onto valid_range_3x3,
/// with r1i = sin((pi/2) rs1i).
IdentityResiduals identity_check(double rs12, double rs13);

struct StripModel {
  std::vector<double> a;                // a[i] = (1 + rs(0, i)) / 2, a[0] = 1
  std::vector<SignSequence> reordered;  // all channels under the canonical sample permutation
  std::vector<std::size_t> order;       // reordered[c][k] = seqs[c][order[k]]
};

/// Stable-sorts sample positions by the state of channels 1 and 2 relative
/// to channel 0, in the order (agree, disagree), (agree, agree),
/// (disagree, agree), (disagree, disagree). With p = 2 only channel 1 is
/// keyed: agreements first.
StripModel canonical_pack(std::span<const SignSequence> seqs);

}  // namespace pcc
