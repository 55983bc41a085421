// SPDX-License-Identifier: Apache-2.0

#include "pcc/psd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "pcc/estimator.hpp"

namespace pcc {

namespace {

constexpr double kSymmetryTol = 1e-12;

void check_unit_interval(double r, const char* name) {
  if (!(r >= -1.0 && r <= 1.0)) throw std::invalid_argument(std::string(name) + " must lie in [-1, 1]");
}

// (1 - r^2) without cancellation near |r| = 1.
double one_minus_square(double r) { return (1.0 - r) * (1.0 + r); }

}  // namespace

std::vector<double> eigvals_sym(const CorrMatrix& m) {
  const std::size_t p = m.dim();
  std::vector<double> a(p * p);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (std::abs(m(i, j).imag()) > kSymmetryTol) {
        throw std::invalid_argument("eigvals_sym: matrix has non-zero imaginary parts");
      }
      if (std::abs(m.real(i, j) - m.real(j, i)) > kSymmetryTol) {
        throw std::invalid_argument("eigvals_sym: matrix is not symmetric");
      }
      a[i * p + j] = m.real(i, j);
    }
  }
  std::vector<double> eig(p);
  jacobi_eigenvalues(a, p, eig);
  return eig;
}

std::vector<double> eigvals_herm(const CorrMatrix& m) {
  const std::size_t p = m.dim();
  const std::size_t n = 2 * p;
  std::vector<double> e(n * n);
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = 0; j < p; ++j) {
      if (std::abs(m(i, j) - std::conj(m(j, i))) > kSymmetryTol) {
        throw std::invalid_argument("eigvals_herm: matrix is not Hermitian");
      }
      const double re = m(i, j).real();
      const double im = m(i, j).imag();
      e[i * n + j] = re;
      e[(i + p) * n + (j + p)] = re;
      e[i * n + (j + p)] = -im;
      e[(i + p) * n + j] = im;
    }
  }
  std::vector<double> eig(p);
  hermitian_eigenvalues_from_embedding(e, p, eig);
  return eig;
}

PsdReport check_psd(const CorrMatrix& m, double tolerance) {
  if (!(tolerance >= 0.0)) throw std::invalid_argument("PSD tolerance must be non-negative");
  PsdReport r;
  r.eigenvalues = m.mode() == Mode::real ? eigvals_sym(m) : eigvals_herm(m);
  r.min_eig = r.eigenvalues.front();
  r.tolerance = tolerance;
  r.is_psd = r.min_eig >= -tolerance;
  return r;
}

Interval valid_range_3x3(double r12, double r13) {
  check_unit_interval(r12, "r12");
  check_unit_interval(r13, "r13");
  const double centre = r12 * r13;
  const double half_width = std::sqrt(one_minus_square(r12) * one_minus_square(r13));
  return {centre - half_width, centre + half_width};
}

Interval sign_range(double rs12, double rs13, std::size_t n) {
  if (n == 0) throw std::invalid_argument("sign_range: N must be at least 1");
  for (double rs : {rs12, rs13}) {
    check_unit_interval(rs, "sign correlation");
    const double k = (rs + 1.0) * static_cast<double>(n) / 2.0;
    if (std::abs(k - std::round(k)) > 1e-9) {
      throw std::invalid_argument("sign correlation " + std::to_string(rs) + " is not on the 2/N grid for N = " +
                                  std::to_string(n));
    }
  }
  return {std::abs(rs12 + rs13) - 1.0, 1.0 - std::abs(rs12 - rs13)};
}

double det3_unit(double r12, double r13, double r23) {
  // 1 * (1 - r23^2) - r12 * (r12 - r23 r13) + r13 * (r12 r23 - r13)
  return (1.0 - r23 * r23) - r12 * (r12 - r23 * r13) + r13 * (r12 * r23 - r13);
}

IdentityResiduals identity_check(double rs12, double rs13) {
  check_unit_interval(rs12, "rs12");
  check_unit_interval(rs13, "rs13");
  const double r12 = std::sin(kHalfPi * rs12);
  const double r13 = std::sin(kHalfPi * rs13);
  const Interval valid = valid_range_3x3(r12, r13);
  return {std::sin(kHalfPi * (1.0 - std::abs(rs12 - rs13))) - valid.hi,
          std::sin(kHalfPi * (std::abs(rs12 + rs13) - 1.0)) - valid.lo};
}

StripModel canonical_pack(std::span<const SignSequence> seqs) {
  if (seqs.size() < 2) throw std::invalid_argument("canonical_pack needs at least two channels");
  const std::size_t n = seqs.front().size();
  for (const auto& s : seqs) {
    if (s.size() != n) throw std::invalid_argument("canonical_pack: channels differ in length");
  }

  const auto& ref = seqs[0];
  const bool keyed_on_two = seqs.size() >= 3;
  auto rank = [&](std::size_t i) {
    const bool first = seqs[1].at(i) == ref.at(i);
    if (!keyed_on_two) return first ? 0 : 1;
    const bool second = seqs[2].at(i) == ref.at(i);
    if (first) return second ? 1 : 0;
    return second ? 2 : 3;
  };

  StripModel model;
  model.order.resize(n);
  std::iota(model.order.begin(), model.order.end(), std::size_t{0});
  std::stable_sort(model.order.begin(), model.order.end(),
                   [&](std::size_t x, std::size_t y) { return rank(x) < rank(y); });

  model.a.reserve(seqs.size());
  model.reordered.reserve(seqs.size());
  for (const auto& s : seqs) {
    model.a.push_back((1.0 + sign_corr(ref, s)) / 2.0);
    model.reordered.push_back(s.permuted(model.order));
  }
  return model;
}

}  // namespace pcc
