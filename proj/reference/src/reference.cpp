// SPDX-License-Identifier: Apache-2.0

#include "pcc/reference.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace pcc::reference {

long long sign_product_sum(const SignSequence& a, const SignSequence& b) {
  if (a.size() != b.size()) throw std::invalid_argument("length mismatch");
  long long sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) sum += a.at(i) * b.at(i);
  return sum;
}

double sign_corr(const SignSequence& a, const SignSequence& b) {
  return static_cast<double>(sign_product_sum(a, b)) / static_cast<double>(a.size());
}

std::vector<double> eigenvalues(const CorrMatrix& m) {
  const auto p = static_cast<Eigen::Index>(m.dim());
  std::vector<double> out(m.dim());
  if (m.mode() == Mode::real) {
    Eigen::MatrixXd a(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j) a(i, j) = m.real(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  } else {
    Eigen::MatrixXcd a(p, p);
    for (Eigen::Index i = 0; i < p; ++i)
      for (Eigen::Index j = 0; j < p; ++j) a(i, j) = m(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    for (Eigen::Index i = 0; i < p; ++i) out[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
  }
  return out;
}

namespace {

int pattern_sign(std::uint64_t index, std::size_t length, std::size_t pos) {
  return ((index >> (length - 1 - pos)) & 1u) ? 1 : -1;
}

void record(Tally& t, std::uint64_t k, double min_eig, double tolerance, std::size_t max_kept) {
  ++t.total;
  if (min_eig < t.min_min_eig) t.min_min_eig = min_eig;
  if (min_eig < -tolerance) {
    ++t.violations;
    if (max_kept == 0 || t.violating.size() < max_kept) t.violating.push_back(k);
  }
}

}  // namespace

Tally enumerate_real(std::size_t p, std::size_t n, double tolerance, bool symmetry_reduce, std::size_t max_kept) {
  const std::size_t free = symmetry_reduce ? p - 1 : p;
  const std::size_t length = free * n;
  if (length > 40) throw std::invalid_argument("reference enumeration is for small spaces only");
  Tally t;
  t.min_min_eig = std::numeric_limits<double>::infinity();
  std::vector<std::vector<int>> s(p, std::vector<int>(n, 1));
  Eigen::MatrixXd a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << length); ++k) {
    for (std::size_t f = 0; f < free; ++f)
      for (std::size_t i = 0; i < n; ++i) s[f + (symmetry_reduce ? 1 : 0)][i] = pattern_sign(k, length, f * n + i);
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        long long sum = 0;
        for (std::size_t q = 0; q < n; ++q) sum += s[i][q] * s[j][q];
        const double rs = static_cast<double>(sum) / static_cast<double>(n);
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            i == j ? 1.0 : std::sin(std::numbers::pi / 2.0 * rs);
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a, Eigen::EigenvaluesOnly);
    record(t, k, solver.eigenvalues()(0), tolerance, max_kept);
  }
  return t;
}

Tally enumerate_complex(std::size_t p, std::size_t n, double tolerance, std::size_t max_kept) {
  const std::size_t length = 2 * p * n;
  if (length > 40) throw std::invalid_argument("reference enumeration is for small spaces only");
  Tally t;
  t.min_min_eig = std::numeric_limits<double>::infinity();
  std::vector<std::vector<std::complex<double>>> s(p, std::vector<std::complex<double>>(n));
  Eigen::MatrixXcd a(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(p));
  for (std::uint64_t k = 0; k < (std::uint64_t{1} << length); ++k) {
    for (std::size_t c = 0; c < p; ++c) {
      for (std::size_t i = 0; i < n; ++i) {
        const std::size_t pos = c * 2 * n + 2 * i;
        s[c][i] = {static_cast<double>(pattern_sign(k, length, pos)),
                   static_cast<double>(pattern_sign(k, length, pos + 1))};
      }
    }
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        std::complex<double> sum{};
        for (std::size_t q = 0; q < n; ++q) sum += s[i][q] * std::conj(s[j][q]);
        sum /= static_cast<double>(n);
        a(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            i == j ? std::complex<double>(1.0)
                   : std::complex<double>(std::sin(std::numbers::pi / 4.0 * sum.real()),
                                          std::sin(std::numbers::pi / 4.0 * sum.imag()));
      }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(a, Eigen::EigenvaluesOnly);
    record(t, k, solver.eigenvalues()(0), tolerance, max_kept);
  }
  return t;
}

}  // namespace pcc::reference
