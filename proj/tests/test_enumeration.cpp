// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>
#include <vector>

#include "pcc/enumeration.hpp"
#include "pcc/estimator.hpp"
#include "pcc/reference.hpp"
#include "support/sign_range_sweep.hpp"

using namespace pcc;

namespace {

const double kA = std::sin(std::numbers::pi / 4.0);
const double kLow = 1.0 - std::numbers::sqrt2;

EnumerationOptions keep_all(int workers = 0) {
  EnumerationOptions o;
  o.max_witnesses = 0;
  o.workers = workers;
  return o;
}

bool has_witness(const EnumerationSummary& s, std::uint64_t index) {
  return std::any_of(s.witnesses.begin(), s.witnesses.end(), [&](const Witness& w) { return w.index == index; });
}

bool spectrum_contains(const std::vector<double>& eig, double v, double tol) {
  return std::any_of(eig.begin(), eig.end(), [&](double e) { return std::abs(e - v) < tol; });
}

SignSequence random_sequence(std::size_t n, std::mt19937_64& gen) {
  std::vector<Word> w(words_for(n));
  for (auto& x : w) x = gen();
  return SignSequence::from_words(std::move(w), n);
}

}  // namespace

TEST_CASE("configuration indexing") {
  CHECK(config_count(Mode::real, 3, 4, true, kDefaultConfigBudget) == 256);
  CHECK(config_count(Mode::real, 3, 4, false, kDefaultConfigBudget) == 4096);
  CHECK(config_count(Mode::complex, 3, 2, false, kDefaultConfigBudget) == 4096);
  CHECK_THROWS_AS(config_count(Mode::real, 5, 9, true, kDefaultConfigBudget), BudgetExceeded);
  CHECK_THROWS_AS(config_count(Mode::real, 3, 4, true, 100), BudgetExceeded);
  CHECK_THROWS_AS(config_count(Mode::real, 8, 10, true, ~std::uint64_t{0}), BudgetExceeded);

  // Unreduced, MSB first: index 0b10'01 with p = 2, N = 2 is channel 0 "+-", channel 1 "-+".
  const auto s = real_configuration(2, 2, 0b1001, false);
  CHECK(s[0].to_string() == "+-");
  CHECK(s[1].to_string() == "-+");
  const auto c = complex_configuration(2, 1, 0b1101);
  CHECK(c[0].to_string() == "++");
  CHECK(c[1].to_string() == "-+");

  std::mt19937_64 gen(4);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t p = 2 + gen() % 4, n = 1 + gen() % 8;
    const bool reduce = gen() & 1u;
    const std::uint64_t total = config_count(Mode::real, p, n, reduce, ~std::uint64_t{0});
    const std::uint64_t idx = gen() % total;
    CHECK(real_config_index(real_configuration(p, n, idx, reduce), reduce) == idx);
    const std::size_t cn = 1 + gen() % 6;
    const std::uint64_t ctotal = config_count(Mode::complex, p, cn, false, ~std::uint64_t{0});
    const std::uint64_t cidx = gen() % ctotal;
    CHECK(complex_config_index(complex_configuration(p, cn, cidx)) == cidx);
  }
}

TEST_CASE("enumerate_real small cases") {
  const auto p3 = enumerate_real(3, 4);
  CHECK(p3.total_configs == 256);
  CHECK(p3.violations == 0);
  CHECK(p3.min_min_eig >= -kDefaultPsdTolerance);
  CHECK(p3.witnesses.empty());

  const auto p2 = enumerate_real(2, 1);
  CHECK(p2.total_configs == 2);
  CHECK(p2.violations == 0);

  CHECK_THROWS_AS(enumerate_real(4, 12), BudgetExceeded);
  CHECK_THROWS(enumerate_real(1, 4));
  CHECK_THROWS(enumerate_real(3, 0));
}

TEST_CASE("enumerate_real finds the four-channel counterexample") {
  const auto s = enumerate_real(4, 4, keep_all());
  CHECK(s.total_configs == 4096);
  CHECK(s.violations == 1056);
  CHECK(s.witnesses.size() == 1056);
  CHECK(std::abs(s.min_min_eig - kLow) < 1e-9);

  const auto t = table1_real();
  const std::uint64_t idx = real_config_index(t.seqs, true);
  REQUIRE(has_witness(s, idx));
  const auto& w = *std::find_if(s.witnesses.begin(), s.witnesses.end(), [&](const Witness& x) { return x.index == idx; });
  CHECK(w.channels == std::vector<std::string>{"++++", "++--", "+++-", "++-+"});
  CHECK(w.matrix == t.matrix);
  CHECK(std::abs(w.eigenvalues.front() - kLow) < 1e-9);

  // Default cap keeps the first 16 in index order.
  const auto capped = enumerate_real(4, 4);
  CHECK(capped.violations == 1056);
  REQUIRE(capped.witnesses.size() == kDefaultMaxWitnesses);
  for (std::size_t k = 0; k < capped.witnesses.size(); ++k) CHECK(capped.witnesses[k].index == s.witnesses[k].index);
}

TEST_CASE("enumerate_complex small cases") {
  CHECK(enumerate_complex(2, 3).violations == 0);
  const auto one = enumerate_complex(2, 1);
  CHECK(one.total_configs == 16);
  CHECK(one.violations == 0);

  const auto s = enumerate_complex(3, 2, keep_all());
  CHECK(s.total_configs == 4096);
  CHECK(s.violations == 1536);
  const auto t = table1_complex();
  const std::uint64_t idx = complex_config_index(t.seqs);
  REQUIRE(has_witness(s, idx));
  const auto& w = *std::find_if(s.witnesses.begin(), s.witnesses.end(), [&](const Witness& x) { return x.index == idx; });
  CHECK(w.channels == std::vector<std::string>{"++ ++", "++ -+", "++ --"});
  CHECK(w.matrix == t.matrix);
  CHECK_THROWS_AS(enumerate_complex(3, 12), BudgetExceeded);
}

TEST_CASE("enumeration matches the serial reference") {
  for (auto [p, n] : {std::pair<std::size_t, std::size_t>{3, 5}, {4, 4}, {4, 3}, {5, 2}}) {
    for (bool reduce : {true, false}) {
      EnumerationOptions o = keep_all();
      o.symmetry_reduce = reduce;
      const auto fast = enumerate_real(p, n, o);
      const auto ref = reference::enumerate_real(p, n, kDefaultPsdTolerance, reduce);
      CHECK(fast.total_configs == ref.total);
      CHECK(fast.violations == ref.violations);
      CHECK(std::abs(fast.min_min_eig - ref.min_min_eig) < 1e-9);
      REQUIRE(fast.witnesses.size() == ref.violating.size());
      for (std::size_t k = 0; k < ref.violating.size(); ++k) CHECK(fast.witnesses[k].index == ref.violating[k]);
    }
  }
  for (auto [p, n] : {std::pair<std::size_t, std::size_t>{2, 4}, {3, 2}}) {
    const auto fast = enumerate_complex(p, n, keep_all());
    const auto ref = reference::enumerate_complex(p, n, kDefaultPsdTolerance);
    CHECK(fast.violations == ref.violations);
    CHECK(std::abs(fast.min_min_eig - ref.min_min_eig) < 1e-9);
    REQUIRE(fast.witnesses.size() == ref.violating.size());
    for (std::size_t k = 0; k < ref.violating.size(); ++k) CHECK(fast.witnesses[k].index == ref.violating[k]);
  }
}

TEST_CASE("enumeration output does not depend on the worker count") {
  const auto a = enumerate_real(4, 4, keep_all(1));
  const auto b = enumerate_real(4, 4, keep_all(3));
  CHECK(a.violations == b.violations);
  CHECK(a.min_min_eig == b.min_min_eig);
  REQUIRE(a.witnesses.size() == b.witnesses.size());
  for (std::size_t k = 0; k < a.witnesses.size(); ++k) {
    CHECK(a.witnesses[k].index == b.witnesses[k].index);
    CHECK(a.witnesses[k].eigenvalues == b.witnesses[k].eigenvalues);
  }
  const auto c = enumerate_complex(3, 2, keep_all(1));
  const auto d = enumerate_complex(3, 2, keep_all(4));
  CHECK(c.violations == d.violations);
  CHECK(c.min_min_eig == d.min_min_eig);
}

TEST_CASE("symmetry reduction agrees with full enumeration per class") {
  for (auto [p, n] : {std::pair<std::size_t, std::size_t>{3, 1}, {3, 2}, {3, 3}, {3, 4}, {4, 3}}) {
    const auto reduced = enumerate_real(p, n, keep_all());
    std::set<std::uint64_t> bad;
    for (const auto& w : reduced.witnesses) bad.insert(w.index);

    EnumerationOptions full_opts = keep_all();
    full_opts.symmetry_reduce = false;
    const auto full = enumerate_real(p, n, full_opts);
    std::set<std::uint64_t> full_bad;
    for (const auto& w : full.witnesses) full_bad.insert(w.index);
    CHECK(full.violations == (std::uint64_t{1} << n) * reduced.violations);

    const std::uint64_t total = full.total_configs;
    std::uint64_t mismatches = 0;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      auto seqs = real_configuration(p, n, idx, false);
      // Flip every sample where channel 0 is '-' to reach the class representative.
      std::vector<std::vector<int>> signs(p, std::vector<int>(n));
      for (std::size_t k = 0; k < n; ++k) {
        const int f = seqs[0].at(k);
        for (std::size_t c = 0; c < p; ++c) signs[c][k] = seqs[c].at(k) * f;
      }
      std::vector<SignSequence> rep;
      for (const auto& s : signs) rep.push_back(SignSequence::pack(s));
      const std::uint64_t ridx = real_config_index(rep, true);
      if (full_bad.count(idx) != bad.count(ridx)) ++mismatches;
    }
    CHECK(mismatches == 0);
  }
}

TEST_CASE("attainable sign correlation range for three channels") {
  for (std::size_t n = 1; n <= 6; ++n) {
    const auto r = testing::sweep_sign_range(n);
    CHECK(r.configs == std::uint64_t{1} << (2 * n));
    CHECK(r.out_of_range == 0);
    CHECK(r.pairs_missing_endpoint == 0);
    CHECK(r.pairs == (n + 1) * (n + 1));
  }
}

TEST_CASE("table1_real") {
  const auto t = table1_real();
  REQUIRE(t.seqs.size() == 4);
  CHECK(t.seqs[0].to_string() == "++++");
  CHECK(t.seqs[1].to_string() == "++--");
  CHECK(t.seqs[2].to_string() == "+++-");
  CHECK(t.seqs[3].to_string() == "++-+");
  CHECK(sign_corr(t.seqs[0], t.seqs[1]) == 0.0);
  CHECK(sign_corr(t.seqs[2], t.seqs[3]) == 0.0);
  for (auto [i, j] : {std::pair{0, 2}, {0, 3}, {1, 2}, {1, 3}}) CHECK(sign_corr(t.seqs[i], t.seqs[j]) == 0.5);
  CHECK(t.matrix.real(0, 1) == 0.0);
  CHECK(t.matrix.real(0, 2) == kA);
  CHECK_FALSE(t.report.is_psd);
  CHECK(std::abs(t.report.min_eig - kLow) < 1e-12);
}

TEST_CASE("table1_complex") {
  const auto t = table1_complex();
  REQUIRE(t.seqs.size() == 3);
  CHECK(t.seqs[1].to_string() == "++ -+");
  CHECK(t.matrix(0, 1) == std::complex<double>(kA, -kA));
  CHECK(t.matrix(0, 2) == std::complex<double>(0.0, 0.0));
  CHECK_FALSE(t.report.is_psd);
  REQUIRE(t.report.eigenvalues.size() == 3);
  CHECK(std::abs(t.report.eigenvalues[0] - kLow) < 1e-12);
  CHECK(std::abs(t.report.eigenvalues[1] - 1.0) < 1e-12);
  CHECK(std::abs(t.report.eigenvalues[2] - (1.0 + std::numbers::sqrt2)) < 1e-12);
}

TEST_CASE("augment_real") {
  const auto t = table1_real();
  const auto aug = augment_real(t.seqs);
  REQUIRE(aug.size() == 5);
  CHECK(aug[0].size() == 8);
  CHECK(aug[1].to_string() == "++++----");
  CHECK(aug[4].to_string() == "+-+-+-+-");
  const auto m = pcc_matrix_real(aug);
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) CHECK(m(i, j) == t.matrix(i, j));
    CHECK(m(i, 4) == std::complex<double>(0.0, 0.0));
    CHECK(m(4, i) == std::complex<double>(0.0, 0.0));
  }
  const auto rep = check_psd(m);
  CHECK_FALSE(rep.is_psd);
  CHECK(spectrum_contains(rep.eigenvalues, kLow, 1e-9));

  const auto twice = augment_real(aug);
  REQUIRE(twice.size() == 6);
  const auto rep6 = check_psd(pcc_matrix_real(twice));
  CHECK_FALSE(rep6.is_psd);
  CHECK(spectrum_contains(rep6.eigenvalues, kLow, 1e-9));

  const auto single = augment_real(std::vector<SignSequence>{SignSequence::from_string("++")});
  REQUIRE(single.size() == 2);
  CHECK(pcc_real(single[0], single[1]) == 0.0);
  CHECK_THROWS(augment_real(std::vector<SignSequence>{}));
}

TEST_CASE("augment_complex") {
  const auto t = table1_complex();
  const auto aug = augment_complex(t.seqs);
  REQUIRE(aug.size() == 4);
  CHECK(aug[3].to_string() == "++ -- ++ --");
  const auto m = pcc_matrix_complex(aug);
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) CHECK(m(i, j) == t.matrix(i, j));
    CHECK(m(i, 3) == std::complex<double>(0.0, 0.0));
  }
  const auto rep = check_psd(m);
  CHECK_FALSE(rep.is_psd);
  CHECK(std::abs(rep.min_eig - kLow) < 1e-9);

  const auto rep5 = check_psd(pcc_matrix_complex(augment_complex(aug)));
  CHECK_FALSE(rep5.is_psd);
  CHECK(rep5.eigenvalues.size() == 5);

  const auto single = augment_complex(std::vector<ComplexSignSequence>{ComplexSignSequence::from_string("+- -+ --")});
  const auto r = pcc_complex(single[0], single[1]);
  CHECK(r.r_hat_re == 0.0);
  CHECK(r.r_hat_im == 0.0);
}

TEST_CASE("augmentation preserves the original block on random inputs") {
  std::mt19937_64 gen(77);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t p = 1 + gen() % 6, n = 1 + gen() % 60;
    std::vector<SignSequence> rs;
    std::vector<ComplexSignSequence> cs;
    for (std::size_t c = 0; c < p; ++c) {
      rs.push_back(random_sequence(n, gen));
      cs.emplace_back(random_sequence(n, gen), random_sequence(n, gen));
    }
    const auto mr = pcc_matrix_real(rs);
    const auto ar = pcc_matrix_real(augment_real(rs));
    const auto mc = pcc_matrix_complex(cs);
    const auto ac = pcc_matrix_complex(augment_complex(cs));
    for (std::size_t i = 0; i < p; ++i) {
      for (std::size_t j = 0; j < p; ++j) {
        REQUIRE(ar(i, j) == mr(i, j));
        REQUIRE(ac(i, j) == mc(i, j));
      }
      REQUIRE(ar(i, p) == std::complex<double>(0.0, 0.0));
      REQUIRE(ac(i, p) == std::complex<double>(0.0, 0.0));
    }
  }
}
