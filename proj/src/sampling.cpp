// SPDX-License-Identifier: Apache-2.0

#include "pcc/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pcc/estimator.hpp"
#include "pcc/parallel.hpp"
#include "pcc/rng.hpp"
#include "pcc/signs.hpp"

namespace pcc {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void check_correlation(double modulus, bool strict) {
  const bool ok = strict ? modulus < 1.0 : modulus <= 1.0;
  if (!ok || !std::isfinite(modulus)) {
    throw std::invalid_argument(strict ? "correlation modulus must be < 1" : "correlation modulus must be <= 1");
  }
}

void check_count(std::size_t n) {
  if (n == 0) throw std::invalid_argument("sample count must be at least 1");
}

std::uint64_t pairs_for(unsigned dof) { return (static_cast<std::uint64_t>(dof) + 1) / 2; }

// sqrt(dof / chi2) from dof normals taken from pairs [first, first + ceil(dof/2)).
double student_scale(const CounterRng& rng, std::uint64_t first_pair, unsigned dof) {
  double chi2 = 0.0;
  unsigned used = 0;
  for (std::uint64_t k = 0; used < dof; ++k) {
    const auto [a, b] = rng.normal_pair(first_pair + k);
    chi2 += a * a;
    if (++used < dof) {
      chi2 += b * b;
      ++used;
    }
  }
  return std::sqrt(static_cast<double>(dof) / chi2);
}

}  // namespace

RealPairSamples sample_bivariate_gaussian(double r, std::size_t n, std::uint64_t seed, int workers) {
  check_correlation(std::abs(r), false);
  check_count(n);
  const CounterRng rng(seed);
  const double s = std::sqrt((1.0 - r) * (1.0 + r));
  RealPairSamples out{std::vector<double>(n), std::vector<double>(n)};
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto [u, v] = rng.normal_pair(static_cast<std::uint64_t>(i));
    out.x[static_cast<std::size_t>(i)] = u;
    out.y[static_cast<std::size_t>(i)] = r * u + s * v;
  }
  return out;
}

RealPairSamples sample_bivariate_student_t(double r, unsigned dof, std::size_t n, std::uint64_t seed, int workers) {
  check_correlation(std::abs(r), false);
  check_count(n);
  if (dof == 0) throw std::invalid_argument("Student-t degrees of freedom must be >= 1");
  const CounterRng rng(seed);
  const double s = std::sqrt((1.0 - r) * (1.0 + r));
  const std::uint64_t block = 1 + pairs_for(dof);
  RealPairSamples out{std::vector<double>(n), std::vector<double>(n)};
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * block;
    const auto [u, v] = rng.normal_pair(base);
    const double scale = student_scale(rng, base + 1, dof);
    out.x[static_cast<std::size_t>(i)] = scale * u;
    out.y[static_cast<std::size_t>(i)] = scale * (r * u + s * v);
  }
  return out;
}

ComplexPairSamples sample_circular_complex(std::complex<double> r, std::size_t n, std::uint64_t seed,
                                           std::optional<unsigned> student_t_dof, int workers) {
  check_correlation(std::abs(r), false);
  check_count(n);
  if (student_t_dof && *student_t_dof == 0) throw std::invalid_argument("Student-t degrees of freedom must be >= 1");
  const CounterRng rng(seed);
  const double rr = r.real();
  const double ri = r.imag();
  const double s = std::sqrt(std::max(0.0, 1.0 - std::norm(r)));
  const std::uint64_t block = 2 + (student_t_dof ? pairs_for(*student_t_dof) : 0);
  ComplexPairSamples out{std::vector<std::complex<double>>(n), std::vector<std::complex<double>>(n)};
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const std::uint64_t base = static_cast<std::uint64_t>(i) * block;
    const auto [u1, u2] = rng.normal_pair(base);
    const auto [u3, u4] = rng.normal_pair(base + 1);
    const double xr = kInvSqrt2 * u1;
    const double xi = kInvSqrt2 * u2;
    // conj(r) x = (rr xr + ri xi) + j (rr xi - ri xr)
    double yr = rr * xr + ri * xi + s * kInvSqrt2 * u3;
    double yi = rr * xi - ri * xr + s * kInvSqrt2 * u4;
    double scale = 1.0;
    if (student_t_dof) scale = student_scale(rng, base + 2, *student_t_dof);
    const auto idx = static_cast<std::size_t>(i);
    out.x[idx] = {scale * xr, scale * xi};
    out.y[idx] = {scale * yr, scale * yi};
  }
  return out;
}

std::vector<std::vector<double>> sample_gaussian_channels(const CorrMatrix& corr, std::size_t n, std::uint64_t seed,
                                                          int workers) {
  if (corr.mode() != Mode::real) throw std::invalid_argument("sample_gaussian_channels needs a real matrix");
  check_count(n);
  const std::size_t p = corr.dim();
  // Cholesky, tolerating (numerically) singular PSD inputs.
  std::vector<double> l(p * p, 0.0);
  for (std::size_t j = 0; j < p; ++j) {
    double d = corr.real(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= l[j * p + k] * l[j * p + k];
    if (d < -1e-9) throw std::invalid_argument("correlation matrix is not positive semidefinite");
    const double ljj = d > 1e-14 ? std::sqrt(d) : 0.0;
    l[j * p + j] = ljj;
    for (std::size_t i = j + 1; i < p; ++i) {
      double v = corr.real(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= l[i * p + k] * l[j * p + k];
      l[i * p + j] = ljj > 0.0 ? v / ljj : 0.0;
    }
  }

  const CounterRng rng(seed);
  const std::uint64_t block = (p + 1) / 2;
  std::vector<std::vector<double>> out(p, std::vector<double>(n));
#pragma omp parallel for schedule(static) num_threads(resolve_workers(workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    std::vector<double> z(2 * block);
    for (std::uint64_t k = 0; k < block; ++k) {
      const auto [a, b] = rng.normal_pair(static_cast<std::uint64_t>(i) * block + k);
      z[2 * k] = a;
      z[2 * k + 1] = b;
    }
    for (std::size_t c = 0; c < p; ++c) {
      double v = 0.0;
      for (std::size_t k = 0; k <= c; ++k) v += l[c * p + k] * z[k];
      out[c][static_cast<std::size_t>(i)] = v;
    }
  }
  return out;
}

double default_mc_tolerance(Mode mode, std::size_t n) {
  check_count(n);
  const double variance_bound = mode == Mode::real ? 1.0 : 4.0;
  return 5.0 * std::sqrt(variance_bound / static_cast<double>(n));
}

McReport mc_arcsine_real(double r, std::size_t n, std::uint64_t seed, const McOptions& options) {
  check_correlation(std::abs(r), true);
  const auto samples = options.student_t_dof
                           ? sample_bivariate_student_t(r, *options.student_t_dof, n, seed, options.workers)
                           : sample_bivariate_gaussian(r, n, seed, options.workers);
  long long sum = 0;
#pragma omp parallel for reduction(+ : sum) schedule(static) num_threads(resolve_workers(options.workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    sum += sign(samples.x[idx]) * sign(samples.y[idx]);
  }
  const double m = static_cast<double>(sum) / static_cast<double>(n);

  McReport rep;
  rep.mode = Mode::real;
  rep.target = r;
  rep.n_samples = n;
  rep.seed = seed;
  rep.student_t_dof = options.student_t_dof;
  rep.empirical_sign_moment = m;
  rep.predicted_sign_moment = (2.0 / std::numbers::pi) * std::asin(r);
  rep.recovered = std::sin(kHalfPi * m);
  rep.moment_stddev = std::sqrt(std::max(0.0, 1.0 - m * m));
  rep.abs_error = std::abs(m - rep.predicted_sign_moment.real());
  rep.tolerance = options.tolerance.value_or(default_mc_tolerance(Mode::real, n));
  rep.pass = rep.abs_error < rep.tolerance;
  return rep;
}

McReport mc_arcsine_complex(std::complex<double> r, std::size_t n, std::uint64_t seed, const McOptions& options) {
  check_correlation(std::abs(r), true);
  const auto samples = sample_circular_complex(r, n, seed, options.student_t_dof, options.workers);
  long long sum_re = 0, sum_im = 0, sq_re = 0, sq_im = 0;
#pragma omp parallel for reduction(+ : sum_re, sum_im, sq_re, sq_im) schedule(static) \
    num_threads(resolve_workers(options.workers))
  for (long long i = 0; i < static_cast<long long>(n); ++i) {
    const auto idx = static_cast<std::size_t>(i);
    const auto a = sign_c(samples.x[idx]);
    const auto b = sign_c(samples.y[idx]);
    // sgn_c(x) sgn_c*(y) = (a_R b_R + a_I b_I) + j (a_I b_R - a_R b_I)
    const long long re = a.re * b.re + a.im * b.im;
    const long long im = a.im * b.re - a.re * b.im;
    sum_re += re;
    sum_im += im;
    sq_re += re * re;
    sq_im += im * im;
  }
  const double dn = static_cast<double>(n);
  const std::complex<double> m(static_cast<double>(sum_re) / dn, static_cast<double>(sum_im) / dn);

  McReport rep;
  rep.mode = Mode::complex;
  rep.target = r;
  rep.n_samples = n;
  rep.seed = seed;
  rep.student_t_dof = options.student_t_dof;
  rep.empirical_sign_moment = m;
  rep.predicted_sign_moment = (4.0 / std::numbers::pi) * std::complex<double>(std::asin(r.real()), std::asin(r.imag()));
  rep.recovered = {std::sin(kQuarterPi * m.real()), std::sin(kQuarterPi * m.imag())};
  const double var_re = static_cast<double>(sq_re) / dn - m.real() * m.real();
  const double var_im = static_cast<double>(sq_im) / dn - m.imag() * m.imag();
  rep.moment_stddev = std::sqrt(std::max({0.0, var_re, var_im}));
  rep.abs_error = std::max(std::abs(m.real() - rep.predicted_sign_moment.real()),
                           std::abs(m.imag() - rep.predicted_sign_moment.imag()));
  rep.tolerance = options.tolerance.value_or(default_mc_tolerance(Mode::complex, n));
  rep.pass = rep.abs_error < rep.tolerance;
  return rep;
}

}  // namespace pcc
