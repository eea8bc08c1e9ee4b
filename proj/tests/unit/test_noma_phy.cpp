// Copyright 2026 The owcsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <random>

#include "owc/noma_phy.hpp"
#include "../support/oracles.hpp"

using namespace owc;
using phy::NomaLink;
using phy::PowerAllocation;
using phy::SicMode;

namespace {

NomaLink link_of(double a1, double a2, double sigma, SicMode sic = SicMode::imperfect) {
  NomaLink l;
  l.a1 = a1;
  l.a2 = a2;
  l.sigma = sigma;
  l.sic = sic;
  return l;
}

// Normalized link (sigma = 1) for a power split alpha at full-power SNR snr.
NomaLink link_at(double alpha, double snr, SicMode sic) {
  return link_of(2.0 * (1.0 - alpha) * std::sqrt(snr), 2.0 * alpha * std::sqrt(snr), 1.0, sic);
}

}  // namespace

TEST_CASE("power allocation validates its domain and fixes the OOK amplitudes") {
  CHECK_THROWS_AS(PowerAllocation(0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation(0.5, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation(-0.1, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(PowerAllocation(0.2, 0.0), std::invalid_argument);

  const PowerAllocation alloc(0.25, 1.0);
  CHECK(alloc.weak_on_amplitude() == doctest::Approx(1.5));
  CHECK(alloc.strong_on_amplitude() == doctest::Approx(0.5));
}

TEST_CASE("superposition amplitudes") {
  const PowerAllocation alloc(0.25, 1.0);
  CHECK(phy::superpose(false, false, alloc) == 0.0);
  CHECK(phy::superpose(true, true, alloc) == doctest::Approx(2.0));
  CHECK(phy::superpose(true, false, alloc) == doctest::Approx(1.5));
  CHECK(phy::superpose(false, true, alloc) == doctest::Approx(0.5));
}

TEST_CASE("received samples have the right mean and variance") {
  const channel::PdParams pd{};
  std::mt19937_64 rng(12);

  // vanishing noise pins the sample to R h x
  const double y0 = phy::receive_sample(rng, 2.0, 5e-6, pd, 1e-30);
  CHECK(y0 == doctest::Approx(0.4 * 5e-6 * 2.0).epsilon(1e-9));

  constexpr int kDraws = 1000000;
  const double sigma = 0.7;
  double sum = 0.0, sum2 = 0.0;
  for (int i = 0; i < kDraws; ++i) {
    const double y = phy::receive_sample(rng, 1.0, 1e-6, pd, sigma);
    sum += y;
    sum2 += y * y;
  }
  const double mean = sum / kDraws;
  const double expected_mean = 0.4 * 1e-6;  // signal term is negligible vs sigma
  CHECK(std::abs(mean - expected_mean) < 5.0 * sigma / std::sqrt(kDraws));
  const double var = sum2 / kDraws - mean * mean;
  const double var_se = sigma * sigma * std::sqrt(2.0 / (kDraws - 1));
  CHECK(std::abs(var - sigma * sigma) < 5.0 * var_se);
}

TEST_CASE("weak-user threshold detection with the strict tie rule") {
  const auto link = link_of(3.0, 1.0, 1.0);
  CHECK(phy::detect_weak(4.0, link));          // noiseless a1 + a2
  CHECK_FALSE(phy::detect_weak(1.0, link));    // interference alone
  CHECK_FALSE(phy::detect_weak(2.0, link));    // exactly at (a1+a2)/2
  CHECK(phy::detect_weak(2.0 + 1e-12, link));
}

TEST_CASE("SIC detection, noiseless corners") {
  const auto imp = link_of(3.0, 1.0, 1.0, SicMode::imperfect);
  const auto perf = link_of(3.0, 1.0, 1.0, SicMode::perfect);

  // (b1, b2) = (1, 0): weak bit detected, residual 0
  auto d = phy::sic_detect_strong(3.0, imp, true);
  CHECK(d.weak_bit);
  CHECK_FALSE(d.strong_bit);

  // (1, 1): residual a2
  d = phy::sic_detect_strong(4.0, imp, true);
  CHECK(d.weak_bit);
  CHECK(d.strong_bit);

  // (0, 1): weak stays below threshold, residual a2
  d = phy::sic_detect_strong(1.0, imp, false);
  CHECK_FALSE(d.weak_bit);
  CHECK(d.strong_bit);

  // perfect mode takes the true weak bit
  d = phy::sic_detect_strong(4.0, perf, true);
  CHECK(d.weak_bit);
  CHECK(d.strong_bit);
}

TEST_CASE("perfect and imperfect SIC agree whenever the weak bit was right") {
  std::mt19937_64 rng(99);
  std::normal_distribution<double> noise(0.0, 1.0);
  const auto imp = link_at(0.3, 30.0, SicMode::imperfect);
  const auto perf = link_at(0.3, 30.0, SicMode::perfect);
  for (int i = 0; i < 20000; ++i) {
    const bool b1 = rng() & 1;
    const bool b2 = rng() & 1;
    const double y = (b1 ? imp.a1 : 0.0) + (b2 ? imp.a2 : 0.0) + noise(rng);
    const auto di = phy::sic_detect_strong(y, imp, b1);
    const auto dp = phy::sic_detect_strong(y, perf, b1);
    if (di.weak_bit == b1) {
      CHECK(di.strong_bit == dp.strong_bit);
    }
  }
}

TEST_CASE("weak-user BER oracle") {
  const auto link = link_of(3.0, 1.0, 1.0);
  CHECK(phy::ber_weak_analytic(link) == doctest::Approx(0.0907027).epsilon(1e-4));

  // a2 -> 0 collapses to single-user OOK
  const auto alone = link_of(3.0, 1e-12, 1.0);
  CHECK(phy::ber_weak_analytic(alone) == doctest::Approx(phy::q_function(1.5)).epsilon(1e-6));

  // overwhelming noise means guessing
  CHECK(phy::ber_weak_analytic(link_of(3.0, 1.0, 1e9)) == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("strong-user perfect-SIC BER oracle") {
  CHECK(phy::ber_strong_perfect_analytic(link_of(3.0, 1.0, 1.0)) ==
        doctest::Approx(0.308538).epsilon(1e-4));
  CHECK(phy::ber_strong_perfect_analytic(link_of(3.0, 0.0, 1.0)) == doctest::Approx(0.5));

  double prev = 1.0;
  for (double a2 = 0.5; a2 < 3.0; a2 += 0.25) {
    const double b = phy::ber_strong_perfect_analytic(link_of(10.0, a2, 1.0));
    CHECK(b < prev);
    prev = b;
  }
}

TEST_CASE("weak BER rises and strong BER falls as alpha grows") {
  double prev_weak = 0.0, prev_strong = 1.0;
  for (double alpha = 0.05; alpha < 0.5; alpha += 0.05) {
    const auto link = link_at(alpha, 100.0, SicMode::perfect);
    const double bw = phy::ber_weak_analytic(link);
    const double bs = phy::ber_strong_perfect_analytic(link);
    CHECK(bw > prev_weak);
    CHECK(bs < prev_strong);
    prev_weak = bw;
    prev_strong = bs;
  }
}

TEST_CASE("symbol simulation tracks the analytic BERs") {
  constexpr int kSymbols = 200000;
  for (const auto [alpha, snr] : std::array<std::array<double, 2>, 2>{{{0.25, 30.0},
                                                                       {0.4, 20.0}}}) {
    const auto imp = link_at(alpha, snr, SicMode::imperfect);
    const auto perf = link_at(alpha, snr, SicMode::perfect);
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> noise(0.0, 1.0);
    int weak_err = 0, strong_perf_err = 0, strong_imp_err = 0;
    for (int i = 0; i < kSymbols; ++i) {
      const bool b1 = rng() & 1;
      const bool b2 = rng() & 1;
      const double y = (b1 ? imp.a1 : 0.0) + (b2 ? imp.a2 : 0.0) + noise(rng);
      weak_err += phy::detect_weak(y, imp) != b1;
      strong_perf_err += phy::sic_detect_strong(y, perf, b1).strong_bit != b2;
      strong_imp_err += phy::sic_detect_strong(y, imp, b1).strong_bit != b2;
    }

    const auto check = [&](int count, double p) {
      const double se = std::sqrt(p * (1.0 - p) / kSymbols);
      CHECK(std::abs(count / static_cast<double>(kSymbols) - p) <= 5.0 * se);
    };
    check(weak_err, phy::ber_weak_analytic(imp));
    check(strong_perf_err, phy::ber_strong_perfect_analytic(perf));
    check(strong_imp_err, test::ber_strong_imperfect_closed_form(imp.a1, imp.a2, 1.0));

    // error propagation can only hurt: a well-separated operating point
    CHECK(strong_imp_err >= strong_perf_err);
    CHECK(test::ber_strong_imperfect_closed_form(imp.a1, imp.a2, 1.0) >=
          phy::ber_strong_perfect_analytic(perf));
  }
}

TEST_CASE("post-split SINRs and rates") {
  CHECK(phy::sinr_group1(0.2, 100.0) == doctest::Approx(12.8).epsilon(1e-12));
  CHECK(phy::sinr_group1(1e-12, 100.0) == doctest::Approx(100.0).epsilon(1e-6));
  CHECK(phy::sinr_group1(0.2, 0.0) == 0.0);

  CHECK(phy::sinr_group2(0.2, 100.0, 0.0) == doctest::Approx(4.0).epsilon(1e-12));
  // residual = 1 is the no-SIC interference-limited form
  CHECK(phy::sinr_group2(0.2, 100.0, 1.0) == doctest::Approx(4.0 / 65.0).epsilon(1e-12));
  CHECK(phy::sinr_group2(1e-12, 100.0, 0.0) == doctest::Approx(0.0).epsilon(1e-12));

  CHECK(phy::rate_noma(0.0) == 0.0);
  CHECK(phy::rate_noma(12.8) == doctest::Approx(3.7866).epsilon(1e-4));
  CHECK(phy::rate_noma(4.0) == doctest::Approx(2.3219).epsilon(1e-4));

  CHECK(phy::rate_oma(100.0) == doctest::Approx(3.3291).epsilon(1e-4));
  CHECK(phy::rate_oma(0.0) == 0.0);

  // alpha -> 0 recovers the single-user rate through the group-1 path
  CHECK(phy::rate_noma(phy::sinr_group1(1e-9, 50.0)) ==
        doctest::Approx(std::log2(51.0)).epsilon(1e-6));
}

TEST_CASE("multicast rate is the weakest member's rate") {
  CHECK(phy::multicast_group_rate(std::array{3.0}) == 3.0);
  CHECK(phy::multicast_group_rate(std::array{2.0, 5.0, 3.0}) == 2.0);
  CHECK(phy::multicast_group_rate(std::array{1.5, 1.5, 1.5}) == 1.5);
  CHECK_THROWS_AS(phy::multicast_group_rate({}), std::invalid_argument);
}

TEST_CASE("feasible alpha intervals") {
  SUBCASE("zero rate floor admits everything") {
    const auto iv = phy::feasible_alpha(100.0, 100.0, 0.0, 0.0);
    REQUIRE(iv.has_value());
    CHECK(iv->lo == 0.0);
    CHECK(iv->hi == 0.5);
  }

  SUBCASE("group-2 boundary at gamma = 100") {
    const auto iv = phy::feasible_alpha(100.0, 100.0, 0.0, 0.5);
    REQUIRE(iv.has_value());
    // invert log2(1 + a^2 g) = 0.5  =>  a = sqrt((2^0.5 - 1) / g)
    CHECK(iv->lo == doctest::Approx(0.064359).epsilon(1e-3));
    CHECK(iv->hi == doctest::Approx(0.5));
  }

  SUBCASE("no strong-user SNR means no feasible alpha") {
    CHECK_FALSE(phy::feasible_alpha(100.0, 0.0, 0.0, 0.5).has_value());
  }

  SUBCASE("demanding floors squeeze the interval shut") {
    CHECK_FALSE(phy::feasible_alpha(3.0, 3.0, 0.0, 2.0).has_value());
  }

  SUBCASE("interval members satisfy both floors, outsiders fail one") {
    const auto iv = phy::feasible_alpha(50.0, 80.0, 0.01, 0.8);
    REQUIRE(iv.has_value());
    const double mid = 0.5 * (iv->lo + iv->hi);
    CHECK(phy::rate_noma(phy::sinr_group1(mid, 50.0)) >= 0.8);
    CHECK(phy::rate_noma(phy::sinr_group2(mid, 80.0, 0.01)) >= 0.8);
    if (iv->lo > 0.0) {
      CHECK(phy::rate_noma(phy::sinr_group2(iv->lo * 0.9, 80.0, 0.01)) < 0.8);
    }
    if (iv->hi < 0.5) {
      CHECK(phy::rate_noma(phy::sinr_group1(std::min(0.499, iv->hi * 1.1), 50.0)) < 0.8);
    }
  }

  CHECK_THROWS_AS(phy::feasible_alpha(1.0, 1.0, 0.0, -0.5), std::invalid_argument);
}
