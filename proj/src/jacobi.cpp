// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "pcc/psd.hpp"

namespace pcc {

namespace {

constexpr int kMaxSweeps = 100;

double off_diagonal_frobenius(std::span<const double> a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sum += a[i * n + j] * a[i * n + j];
  return std::sqrt(2.0 * sum);
}

}  // namespace

void jacobi_eigenvalues(std::span<double> a, std::size_t n, std::span<double> eigenvalues) {
  if (a.size() < n * n || eigenvalues.size() < n) throw std::invalid_argument("jacobi: buffer too small");
  const double threshold = 1e-14 * static_cast<double>(n);

  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (off_diagonal_frobenius(a, n) < threshold) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        const double theta = (aqq - app) / (2.0 * apq);
        // t = tan of the rotation angle, smaller root.
        double t;
        if (std::abs(theta) > 1e150) {
          t = 0.5 / theta;
        } else {
          t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        }
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a[k * n + p];
          const double akq = a[k * n + q];
          const double new_kp = c * akp - s * akq;
          const double new_kq = s * akp + c * akq;
          a[k * n + p] = a[p * n + k] = new_kp;
          a[k * n + q] = a[q * n + k] = new_kq;
        }
        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) eigenvalues[i] = a[i * n + i];
  std::sort(eigenvalues.begin(), eigenvalues.begin() + static_cast<std::ptrdiff_t>(n));
}

void hermitian_eigenvalues_from_embedding(std::span<double> embedded, std::size_t p, std::span<double> eigenvalues) {
  if (eigenvalues.size() < p) throw std::invalid_argument("hermitian eigenvalues: buffer too small");
  std::vector<double> doubled(2 * p);
  jacobi_eigenvalues(embedded, 2 * p, doubled);
  for (std::size_t k = 0; k < p; ++k) eigenvalues[k] = 0.5 * (doubled[2 * k] + doubled[2 * k + 1]);
}

}  // namespace pcc
