// Copyright 2026 The qftkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qftkit/shor.hpp"

#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/rational.hpp>

using namespace qftkit;
using boost::multiprecision::cpp_int;

TEST(precompute_powers, seven_mod_fifteen) {
    EXPECT_EQ(precompute_powers(7, 15), (std::vector<std::uint64_t>{7, 4, 1, 1, 1, 1, 1, 1}));
    EXPECT_EQ(precompute_powers(1, 15), std::vector<std::uint64_t>(8, 1));
}

TEST(precompute_powers, lucky_gcd) {
    try {
        precompute_powers(6, 15);
        FAIL();
    } catch (const LuckyFactor& e) {
        EXPECT_EQ(e.divisor, 3u);
    }
}

TEST(precompute_powers, matches_bigint_oracle) {
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 1000) {
        std::uint64_t N = 3 + rng() % (max_factor_modulus - 3);
        std::uint64_t a = 2 + rng() % (N - 2);
        if (std::gcd(a, N) != 1) {
            continue;
        }
        auto b = precompute_powers(a, N);
        ASSERT_EQ(b.size(), order_register_bits(N));
        for (std::size_t j = 0; j < b.size(); j++) {
            cpp_int e = cpp_int(1) << j;
            cpp_int want = boost::multiprecision::powm(cpp_int(a), e, cpp_int(N));
            ASSERT_EQ(cpp_int(b[j]), want) << a << " " << N << " " << j;
            if (j + 1 < b.size()) {
                ASSERT_EQ(b[j + 1], b[j] * b[j] % N);
            }
        }
        checked++;
    }
}

TEST(multiplicative_order, small_cases) {
    EXPECT_EQ(multiplicative_order(7, 15), 4u);
    EXPECT_EQ(multiplicative_order(14, 15), 2u);
    EXPECT_EQ(multiplicative_order(2, 21), 6u);
    EXPECT_EQ(multiplicative_order(1, 35), 1u);
    EXPECT_THROW(multiplicative_order(3, 15), ValueError);
}

TEST(continued_fraction, examples) {
    auto c = continued_fraction_post(64, 256, 15);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 1u);
    EXPECT_EQ(c->r, 4u);
    c = continued_fraction_post(85, 256, 15);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 1u);
    EXPECT_EQ(c->r, 3u);
    c = continued_fraction_post(0, 256, 15);
    ASSERT_TRUE(c);
    EXPECT_EQ(c->k, 0u);
    EXPECT_EQ(c->r, 1u);
    EXPECT_THROW(continued_fraction_post(256, 256, 15), ValueError);
}

// Oracle: brute force over every fraction k/r with r < N, using exact rationals.
TEST(continued_fraction, agrees_with_exhaustive_search) {
    for (std::uint64_t N : {15u, 21u, 35u}) {
        std::uint64_t m = std::uint64_t{1} << order_register_bits(N);
        for (std::uint64_t y = 0; y < m; y += 3) {
            auto c = continued_fraction_post(y, m, N);
            boost::rational<long long> target(static_cast<long long>(y), static_cast<long long>(m));
            boost::rational<long long> tol(1, static_cast<long long>(m));
            std::uint64_t best_r = 0;
            for (long long r = 1; r < static_cast<long long>(N); r++) {
                for (long long k = 0; k < r; k++) {
                    if (std::gcd(k, r) != 1 && !(k == 0 && r == 1)) {
                        continue;
                    }
                    auto d = boost::rational<long long>(k, r) - target;
                    if (boost::abs(d) <= tol && best_r == 0) {
                        best_r = static_cast<std::uint64_t>(r);
                    }
                }
            }
            if (!c) {
                EXPECT_EQ(best_r, 0u) << y;
                continue;
            }
            EXPECT_EQ(std::gcd(c->k, c->r), 1u);
            EXPECT_LT(c->r, N);
            boost::rational<long long> got(static_cast<long long>(c->k), static_cast<long long>(c->r));
            EXPECT_LE(boost::abs(got - target), tol);
            // With 2n bits at most one reduced fraction of denominator < N fits, and it is a convergent.
            EXPECT_EQ(c->r, best_r) << N << " " << y;
        }
    }
}

// Oracle: direct sum over the x register, a^x computed independently.
TEST(order_finding, analytic_distribution_matches_direct_sum) {
    std::uint64_t N = 21, a = 2, m = 1024;
    std::map<std::uint64_t, std::vector<std::uint64_t>> cosets;
    std::uint64_t v = 1;
    for (std::uint64_t x = 0; x < m; x++) {
        cosets[v].push_back(x);
        v = v * a % N;
    }
    auto p = order_finding_distribution(multiplicative_order(a, N), m);
    double total = 0;
    for (std::uint64_t y = 0; y < m; y += 7) {
        double want = 0;
        for (auto& [val, xs] : cosets) {
            Complex s = 0;
            for (auto x : xs) {
                s += std::polar(1.0, 2 * M_PI * static_cast<double>(x * y % m) / static_cast<double>(m));
            }
            want += std::norm(s) / static_cast<double>(m * m);
        }
        EXPECT_NEAR(p[y], want, 1e-12) << y;
    }
    for (double q : p) {
        total += q;
    }
    EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(order_finding, seven_mod_fifteen_peaks) {
    auto p = order_finding_distribution(4, 256);
    EXPECT_GE(p[0] + p[64] + p[128] + p[192], 0.9);
    auto one = order_finding_distribution(1, 256);
    EXPECT_NEAR(one[0], 1.0, 1e-12);
}

TEST(order_finding, gate_backend_is_exact_at_fifteen) {
    OrderFinder gate(15, {OrderBackend::gate});
    for (std::uint64_t a : {1u, 2u, 4u, 7u, 8u, 11u, 13u, 14u}) {
        const auto& p = gate.distribution(a);
        auto q = order_finding_distribution(multiplicative_order(a, 15), 256);
        for (std::size_t y = 0; y < 256; y++) {
            EXPECT_NEAR(p[y], q[y], 1e-12) << a << " " << y;
        }
    }
    EXPECT_THROW(OrderFinder(21, {OrderBackend::gate}), CapacityError);
}

TEST(order_finding, gate_vs_analytic_samples) {
    OrderFinder gate(15, {OrderBackend::gate});
    OrderFinder analytic(15, {OrderBackend::analytic});
    std::vector<std::size_t> hg(256), ha(256);
    for (std::uint64_t s = 0; s < 2000; s++) {
        hg[gate.sample(7, derive_seed(11, s))]++;
        ha[analytic.sample(7, derive_seed(12, s))]++;
    }
    EXPECT_LE(tv_distance(hg, ha), 0.08);
}

TEST(order_finding, windowed_sampler_hits_peaks) {
    // N near the cap: the register has 2^40 states, above the tabulation limit.
    std::uint64_t N = 1009ull * 997ull;
    std::uint64_t a = 2, r = multiplicative_order(a, N);
    OrderFinder f(N, {OrderBackend::analytic});
    std::uint64_t m = f.register_size();
    int good = 0;
    for (std::uint64_t s = 0; s < 200; s++) {
        std::uint64_t y = f.sample(a, s);
        auto c = continued_fraction_post(y, m, N);
        good += c && r % c->r == 0;
        // The nearest multiple of m / r is within a few steps.
        auto j = static_cast<std::uint64_t>((static_cast<unsigned __int128>(y) * r + m / 2) / m);
        auto dist = static_cast<__int128>(static_cast<unsigned __int128>(j) * m) - static_cast<__int128>(y) * r;
        EXPECT_LE(dist < 0 ? -dist : dist, static_cast<__int128>(64) * r + m);
    }
    // Each peak carries at least 4/pi^2 of its mass on the nearest y.
    EXPECT_GT(good, 0.4 * 200);
}

TEST(factor, fifteen_gate_backend_both_qfts) {
    for (auto kind : {QftPlan::Kind::standard, QftPlan::Kind::logdepth}) {
        FactorOptions o;
        o.order = {OrderBackend::gate, kind, 48};
        for (std::uint64_t seed = 0; seed < 10; seed++) {
            auto r = factor(15, seed, o);
            ASSERT_TRUE(r.success()) << seed;
            EXPECT_TRUE(r.divisor == 3 || r.divisor == 5);
        }
    }
}

TEST(factor, retry_path_on_minus_one_root) {
    // a = 14 has order 2 and 14 = -1 mod 15, so the square root is trivial.
    FactorOptions o;
    o.order = {OrderBackend::gate};
    o.forced_bases = {14, 7};
    o.samples_per_base = 8;
    auto r = factor(15, 3, o);
    ASSERT_GE(r.trace.size(), 2u);
    EXPECT_EQ(r.trace[0].a, 14u);
    EXPECT_EQ(r.trace[0].r, 2u);
    EXPECT_EQ(r.trace[0].outcome, "trivial_root");
    EXPECT_EQ(r.trace[1].a, 7u);
    EXPECT_TRUE(r.success());
}

TEST(factor, analytic_backend_success_rate) {
    for (std::uint64_t N : {21u, 33u, 35u}) {
        int ok = 0;
        for (std::uint64_t seed = 0; seed < 100; seed++) {
            auto r = factor(N, seed);
            if (r.success()) {
                ok++;
                EXPECT_LE(r.trace.size(), 10u);
            }
        }
        EXPECT_GE(ok, 95) << N;
    }
}

TEST(factor, classical_screens) {
    EXPECT_EQ(factor(20, 0).divisor, 2u);
    EXPECT_EQ(factor(20, 0).method, "even");
    EXPECT_EQ(factor(9, 0).divisor, 3u);
    EXPECT_EQ(factor(125, 0).method, "prime_power");
    EXPECT_THROW(factor(13, 0), ValueError);
    EXPECT_THROW(factor(3, 0), ValueError);
    EXPECT_THROW(factor(max_factor_modulus + 1, 0), ValueError);
    FactorOptions o;
    o.forced_bases = {6};
    auto r = factor(15, 0, o);
    EXPECT_EQ(r.method, "lucky_gcd");
    EXPECT_EQ(r.divisor, 3u);
}

TEST(factor, logdepth_matches_standard_statistics) {
    std::size_t trials = 400, ok[2] = {0, 0};
    int i = 0;
    for (auto kind : {QftPlan::Kind::standard, QftPlan::Kind::logdepth}) {
        OrderFinder f(15, {OrderBackend::gate, kind, 48});
        for (std::uint64_t s = 0; s < trials; s++) {
            std::uint64_t a = 7;
            ok[i] += factor_attempt(f, 15, a, 1, derive_seed(100 + i, s)).outcome == "found";
        }
        i++;
    }
    EXPECT_GT(two_proportion_p_value(ok[0], trials, ok[1], trials), 0.01);
}

TEST(two_proportion, reference_values) {
    EXPECT_NEAR(two_proportion_p_value(50, 100, 50, 100), 1.0, 1e-12);
    // z = 0.1 / sqrt(0.25 * 0.02) = 1.41421, two-sided p = 0.157299.
    EXPECT_NEAR(two_proportion_p_value(55, 100, 45, 100), 0.157299, 1e-5);
}
