// SPDX-License-Identifier: Apache-2.0
//
// Compares the production kernels against the serial reference
// implementations:
//   sign_corr      popcount over packed words vs per-sample +-1 loop
//   pcc_matrix     parallel pair assembly vs a single worker
//   enumerate      chunked OpenMP sweep vs the serial Eigen-based reference

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

#include "pcc/enumeration.hpp"
#include "pcc/estimator.hpp"
#include "pcc/reference.hpp"
#include "pcc/signs.hpp"

namespace {

using Clock = std::chrono::steady_clock;

template <typename F>
double best_seconds(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = Clock::now();
    f();
    const double s = std::chrono::duration<double>(Clock::now() - t0).count();
    if (s < best) best = s;
  }
  return best;
}

pcc::SignSequence random_sequence(std::size_t n, std::mt19937_64& gen) {
  std::vector<pcc::Word> words(pcc::words_for(n));
  for (auto& w : words) w = gen();
  return pcc::SignSequence::from_words(std::move(words), n);
}

volatile double g_sink = 0.0;

}  // namespace

int main() {
  std::mt19937_64 gen(7);

  std::printf("%-28s %12s %14s %14s %9s\n", "kernel", "size", "fast [s]", "reference [s]", "speedup");
  for (std::size_t n : {std::size_t{1} << 10, std::size_t{1} << 16, std::size_t{1} << 20}) {
    const auto a = random_sequence(n, gen);
    const auto b = random_sequence(n, gen);
    const int reps = n >= (1u << 20) ? 20 : 200;
    const double fast = best_seconds(reps, [&] { g_sink = g_sink + pcc::sign_corr(a, b); });
    const double slow = best_seconds(reps, [&] { g_sink = g_sink + pcc::reference::sign_corr(a, b); });
    std::printf("%-28s %12zu %14.3e %14.3e %8.1fx\n", "sign_corr", n, fast, slow, slow / fast);
    const double throughput = static_cast<double>(n) / fast / 1e9;
    std::printf("%-28s %12zu %11.2f Gsamples/s\n", "  popcount throughput", n, throughput);
  }

  {
    const std::size_t p = 32, n = std::size_t{1} << 16;
    std::vector<pcc::SignSequence> seqs;
    for (std::size_t c = 0; c < p; ++c) seqs.push_back(random_sequence(n, gen));
    const double par = best_seconds(10, [&] { g_sink = g_sink + pcc::pcc_matrix_real(seqs, 0).real(0, 1); });
    const double ser = best_seconds(10, [&] { g_sink = g_sink + pcc::pcc_matrix_real(seqs, 1).real(0, 1); });
    std::printf("%-28s %9zux%-2zu %14.3e %14.3e %8.1fx\n", "pcc_matrix_real", p, n >> 10, par, ser, ser / par);
  }

  for (auto [p, n] : {std::pair<std::size_t, std::size_t>{3, 8}, {4, 4}}) {
    const double fast = best_seconds(3, [&] { g_sink = g_sink + pcc::enumerate_real(p, n).min_min_eig; });
    const double slow = best_seconds(
        3, [&] { g_sink = g_sink + pcc::reference::enumerate_real(p, n, pcc::kDefaultPsdTolerance, true).min_min_eig; });
    char label[32];
    std::snprintf(label, sizeof label, "enumerate_real p=%zu N=%zu", p, n);
    std::printf("%-28s %12llu %14.3e %14.3e %8.1fx\n", label,
                static_cast<unsigned long long>(std::uint64_t{1} << ((p - 1) * n)), fast, slow, slow / fast);
  }

  {
    const double fast = best_seconds(3, [&] { g_sink = g_sink + pcc::enumerate_complex(2, 4).min_min_eig; });
    const double slow =
        best_seconds(3, [&] { g_sink = g_sink + pcc::reference::enumerate_complex(2, 4, 1e-9).min_min_eig; });
    std::printf("%-28s %12llu %14.3e %14.3e %8.1fx\n", "enumerate_complex p=2 N=4", 1ull << 16, fast, slow,
                slow / fast);
  }
  return 0;
}
