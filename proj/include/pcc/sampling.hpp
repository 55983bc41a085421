// SPDX-License-Identifier: Apache-2.0
//
// Synthetic signals and Monte Carlo checks of the arcsine law.
//
// Every sample i draws from its own fixed block of counters in a
// CounterRng, so streams are identical for any worker count.

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "pcc/corr_matrix.hpp"

namespace pcc {

struct RealPairSamples {
  std::vector<double> x;
  std::vector<double> y;
};

struct ComplexPairSamples {
  std::vector<std::complex<double>> x;
  std::vector<std::complex<double>> y;
};

/// x = u, y = r u + sqrt(1 - r^2) v with u, v independent N(0, 1).
RealPairSamples sample_bivariate_gaussian(double r, std::size_t n, std::uint64_t seed, int workers = 0);

/// Gaussian pair scaled by a shared sqrt(dof / chi2_dof) factor: a
/// heavy-tailed elliptical pair with the same correlation parameter.
RealPairSamples sample_bivariate_student_t(double r, unsigned dof, std::size_t n, std::uint64_t seed,
                                           int workers = 0);

/// Circular complex Gaussian pair with E{|x|^2} = E{|y|^2} = 1 and E{x y*} = r:
/// x = (u1 + j u2) / sqrt 2, y = conj(r) x + sqrt(1 - |r|^2) w.
/// With dof set, both are scaled by a shared Student-t factor.
ComplexPairSamples sample_circular_complex(std::complex<double> r, std::size_t n, std::uint64_t seed,
                                           std::optional<unsigned> student_t_dof = std::nullopt, int workers = 0);

/// p real Gaussian channels with the given correlation matrix (lower Cholesky factor).
std::vector<std::vector<double>> sample_gaussian_channels(const CorrMatrix& corr, std::size_t n, std::uint64_t seed,
                                                          int workers = 0);

struct McOptions {
  std::optional<double> tolerance;  // defaults to default_mc_tolerance
  std::optional<unsigned> student_t_dof;
  int workers = 0;
};

struct McReport {
  Mode mode = Mode::real;
  std::complex<double> target;
  std::size_t n_samples = 0;
  std::uint64_t seed = 0;
  std::optional<unsigned> student_t_dof;
  std::complex<double> empirical_sign_moment;
  std::complex<double> predicted_sign_moment;
  std::complex<double> recovered;  // sine map applied to the empirical moment
  double moment_stddev = 0.0;      // per-sample deviation (largest component)
  double abs_error = 0.0;          // largest component error of the moment
  double tolerance = 0.0;
  bool pass = false;
};

/// 5 sqrt(Var / n) with Var <= 1 for real sign products and <= 4 for each
/// component of sgn_c(x) sgn_c*(y).
double default_mc_tolerance(Mode mode, std::size_t n);

/// Mean of sgn(x) sgn(y) against (2/pi) asin(r).
McReport mc_arcsine_real(double r, std::size_t n, std::uint64_t seed, const McOptions& options = {});

/// Mean of sgn_c(x) sgn_c*(y) against (4/pi) [asin(r_R) + j asin(r_I)].
McReport mc_arcsine_complex(std::complex<double> r, std::size_t n, std::uint64_t seed, const McOptions& options = {});

}  // namespace pcc
