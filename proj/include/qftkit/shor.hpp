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

// Order finding and factoring with precomputed powers. The quantum step is either run
// gate by gate (N = 15) or sampled from its exact output distribution.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qftkit/phasest.hpp"
#include "qftkit/qft_pow2.hpp"
#include "qftkit/revarith.hpp"
#include "qftkit/sim.hpp"

namespace qftkit {

/// gcd(a, N) > 1: the base itself exposes a factor.
struct LuckyFactor : std::runtime_error {
    std::uint64_t divisor;
    explicit LuckyFactor(std::uint64_t d)
        : std::runtime_error("base shares the factor " + std::to_string(d)), divisor(d) {}
};

inline constexpr std::uint64_t max_factor_modulus = std::uint64_t{1} << 20;

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t n) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % n);
}

inline std::uint64_t pow_mod(std::uint64_t a, std::uint64_t e, std::uint64_t n) {
    std::uint64_t r = 1 % n;
    a %= n;
    for (; e; e >>= 1) {
        if (e & 1) {
            r = mul_mod(r, a, n);
        }
        a = mul_mod(a, a, n);
    }
    return r;
}

/// Number of wires in the first (x) register: twice the bit length of N.
inline unsigned order_register_bits(std::uint64_t N) { return 2 * static_cast<unsigned>(std::bit_width(N)); }

/// b_j = a^{2^j} mod N for j < 2n, by repeated squaring.
inline std::vector<std::uint64_t> precompute_powers(std::uint64_t a, std::uint64_t N) {
    if (N < 3) {
        throw ValueError("modulus must be at least 3");
    }
    std::uint64_t d = std::gcd(a % N, N);
    if (d != 1) {
        throw LuckyFactor(d);
    }
    unsigned L = order_register_bits(N);
    std::vector<std::uint64_t> b(L);
    b[0] = a % N;
    for (unsigned j = 1; j < L; j++) {
        b[j] = mul_mod(b[j - 1], b[j - 1], N);
    }
    return b;
}

inline std::uint64_t multiplicative_order(std::uint64_t a, std::uint64_t N) {
    if (std::gcd(a % N, N) != 1) {
        throw ValueError("base is not a unit modulo N");
    }
    std::uint64_t v = a % N;
    std::uint64_t r = 1;
    while (v != 1 % N) {
        v = mul_mod(v, a, N);
        r++;
    }
    return r;
}

/// Convergent k/r of y/m with k < r < N and |y/m - k/r| <= 1/m; the last one found wins.
struct Convergent {
    std::uint64_t k = 0;
    std::uint64_t r = 1;
};

inline std::optional<Convergent> continued_fraction_post(std::uint64_t y, std::uint64_t m, std::uint64_t N) {
    if (y >= m) {
        throw ValueError("measured value exceeds the register");
    }
    std::optional<Convergent> best;
    // h/k recurrences with (h_{-1}, k_{-1}) = (1, 0), (h_{-2}, k_{-2}) = (0, 1).
    std::uint64_t hp = 1, hpp = 0, kp = 0, kpp = 1;
    std::uint64_t num = y, den = m;
    while (den) {
        std::uint64_t q = num / den;
        unsigned __int128 h = static_cast<unsigned __int128>(q) * hp + hpp;
        unsigned __int128 k = static_cast<unsigned __int128>(q) * kp + kpp;
        if (k >= N) {
            break;
        }
        __int128 gap = static_cast<__int128>(y) * static_cast<__int128>(k) - static_cast<__int128>(h) * m;
        if ((gap < 0 ? -gap : gap) <= static_cast<__int128>(k) && h < k) {
            best = Convergent{static_cast<std::uint64_t>(h), static_cast<std::uint64_t>(k)};
        }
        hpp = std::exchange(hp, static_cast<std::uint64_t>(h));
        kpp = std::exchange(kp, static_cast<std::uint64_t>(k));
        num = std::exchange(den, num % den);
    }
    return best;
}

/// Exact law of y for the order-r periodic state on a register of size m:
/// Pr[y] = m^{-2} sum_{x0 < r} |sum_{t < M(x0)} e^{2 pi i y r t / m}|^2.
inline double order_finding_probability(std::uint64_t y, std::uint64_t r, std::uint64_t m) {
    std::uint64_t q = m / r;
    std::uint64_t longer = m % r;  // this many offsets get q + 1 terms
    std::uint64_t step = static_cast<std::uint64_t>(static_cast<unsigned __int128>(y) * r % m);
    auto fejer = [&](std::uint64_t M) {
        if (step == 0) {
            return static_cast<double>(M) * static_cast<double>(M);
        }
        std::uint64_t top = static_cast<std::uint64_t>(static_cast<unsigned __int128>(step) * M % m);
        double s = std::sin(M_PI * static_cast<double>(top) / static_cast<double>(m));
        double d = std::sin(M_PI * static_cast<double>(step) / static_cast<double>(m));
        return s * s / (d * d);
    };
    double md = static_cast<double>(m);
    return (static_cast<double>(longer) * fejer(q + 1) + static_cast<double>(r - longer) * fejer(q)) / (md * md);
}

/// Pr[y] for every y; only for registers up to 2^20.
inline std::vector<double> order_finding_distribution(std::uint64_t r, std::uint64_t m) {
    if (m > (std::uint64_t{1} << 20)) {
        throw CapacityError("order_finding_distribution: register too large to tabulate");
    }
    std::vector<double> p(m);
    for (std::uint64_t y = 0; y < m; y++) {
        p[y] = order_finding_probability(y, r, m);
    }
    return p;
}

inline std::uint64_t sample_index(const std::vector<double>& cdf, std::mt19937_64& rng) {
    double u = uniform01(rng) * cdf.back();
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    return static_cast<std::uint64_t>(std::min<std::ptrdiff_t>(it - cdf.begin(), cdf.size() - 1));
}

enum class OrderBackend { analytic, gate };

struct OrderFindingOptions {
    OrderBackend backend = OrderBackend::analytic;
    QftPlan::Kind qft = QftPlan::Kind::standard;
    unsigned copies = 48;  // logdepth only
};

/// Samples the measured y of one order-finding run. Distributions are cached per base.
class OrderFinder {
  public:
    OrderFinder(std::uint64_t N, OrderFindingOptions opts) : N_(N), opts_(opts) {
        if (N < 3 || N >= max_factor_modulus) {
            throw ValueError("modulus out of range");
        }
        if (opts.backend == OrderBackend::gate && N > 15) {
            throw CapacityError("gate backend is limited to N <= 15");
        }
        if (opts.qft != QftPlan::Kind::standard && opts.qft != QftPlan::Kind::logdepth) {
            throw ValueError("order finding uses the standard or logdepth QFT");
        }
        if (opts.qft == QftPlan::Kind::logdepth) {
            check_logdepth_plan(logdepth_plan());
        }
    }

    std::uint64_t register_size() const { return std::uint64_t{1} << order_register_bits(N_); }

    QftPlan logdepth_plan() const {
        QftPlan p;
        p.kind = QftPlan::Kind::logdepth;
        p.n = order_register_bits(N_);
        p.copies = opts_.copies;
        return p;
    }

    /// Distribution of y for base a (tabulated), before any channel failure.
    const std::vector<double>& distribution(std::uint64_t a) {
        auto& slot = cache_[a];
        if (slot.empty()) {
            slot = opts_.backend == OrderBackend::gate ? gate_distribution(a)
                                                       : order_finding_distribution(multiplicative_order(a, N_),
                                                                                    register_size());
        }
        return slot;
    }

    std::uint64_t sample(std::uint64_t a, std::uint64_t seed) {
        std::mt19937_64 rng(seed);
        std::uint64_t m = register_size();
        if (opts_.qft == QftPlan::Kind::logdepth) {
            // A run whose vote misses x leaves the register entangled with garbage; we
            // read such a run as a uniformly random y.
            std::uint64_t x = rng() & (m - 1);
            if (!run_logdepth_channel(logdepth_plan(), x, derive_seed(seed, 1)).cleared) {
                return rng() & (m - 1);
            }
        }
        if (opts_.backend == OrderBackend::analytic && m > (std::uint64_t{1} << 20)) {
            return windowed_sample(multiplicative_order(a, N_), m, rng);
        }
        const auto& p = distribution(a);
        auto& cdf = cdf_[a];
        if (cdf.empty()) {
            cdf.resize(p.size());
            std::partial_sum(p.begin(), p.end(), cdf.begin());
        }
        return sample_index(cdf, rng);
    }

    /// H on x, out ^= prod b_j^{x_j}, QFT on x; y read off the bit-reversed outputs.
    std::vector<double> gate_distribution(std::uint64_t a) const {
        auto b = precompute_powers(a, N_);
        unsigned L = order_register_bits(N_);
        auto w = static_cast<std::uint32_t>(std::bit_width(N_));
        Circuit c(L + w, "order_finding");
        auto x = detail::span_register(0, L);
        for (auto q : x) {
            c.h(q);
        }
        Circuit mult = iterated_product(b, N_);
        WireMap wm(mult.width());
        for (std::uint32_t i = 0; i < L + w; i++) {
            wm[i] = i;
        }
        append_circuit(c, mult, wm);
        emit_standard_qft(c, x, L);
        auto s = SparseState::basis(c.width(), {}, 0);
        apply_sparse(c, s);
        std::vector<double> p(std::uint64_t{1} << L, 0.0);
        for (auto [y, pr] : s.marginal(detail::reversed(x))) {
            p[y] = pr;
        }
        return p;
    }

  private:
    // Above 2^20 the table is too big: pick a peak j uniformly and sample y from the
    // exact law restricted to a window around j m / r.
    static std::uint64_t windowed_sample(std::uint64_t r, std::uint64_t m, std::mt19937_64& rng) {
        constexpr std::int64_t half = 64;
        std::uint64_t j = rng() % r;
        auto centre = static_cast<std::int64_t>((static_cast<unsigned __int128>(j) * m + r / 2) / r);
        std::vector<double> cdf;
        std::vector<std::uint64_t> ys;
        double acc = 0;
        for (std::int64_t d = -half; d <= half; d++) {
            std::int64_t y = centre + d;
            auto yy = static_cast<std::uint64_t>(((y % static_cast<std::int64_t>(m)) + static_cast<std::int64_t>(m)) %
                                                 static_cast<std::int64_t>(m));
            acc += order_finding_probability(yy, r, m);
            cdf.push_back(acc);
            ys.push_back(yy);
        }
        return ys[sample_index(cdf, rng)];
    }

    std::uint64_t N_;
    OrderFindingOptions opts_;
    std::map<std::uint64_t, std::vector<double>> cache_;
    std::map<std::uint64_t, std::vector<double>> cdf_;
};

struct FactorOptions {
    OrderFindingOptions order;
    unsigned max_attempts = 10;      // bases tried before giving up
    unsigned samples_per_base = 1;   // y measurements per base
    std::vector<std::uint64_t> forced_bases;  // used first, in order
};

struct FactorAttempt {
    std::uint64_t a = 0;
    std::vector<std::uint64_t> ys;
    std::uint64_t r = 0;  // 0 when no convergent verified
    std::uint64_t divisor = 0;
    std::string outcome;  // lucky_gcd, no_order, odd_order, trivial_root, found
};

struct FactorResult {
    std::uint64_t N = 0;
    std::uint64_t divisor = 0;  // 0 when the budget ran out
    std::string method;         // even, prime_power, quantum, lucky_gcd
    std::vector<FactorAttempt> trace;
    bool success() const { return divisor > 1 && divisor < N && N % divisor == 0; }
};

inline bool is_prime(std::uint64_t n) {
    if (n < 2) {
        return false;
    }
    for (std::uint64_t p = 2; p * p <= n; p++) {
        if (n % p == 0) {
            return false;
        }
    }
    return true;
}

/// p when n = p^e for a prime p and e >= 2, else 0.
inline std::uint64_t prime_power_base(std::uint64_t n) {
    for (std::uint64_t p = 2; p * p <= n; p++) {
        if (n % p == 0) {
            while (n % p == 0) {
                n /= p;
            }
            return n == 1 ? p : 0;
        }
    }
    return 0;
}

/// One base: sample y, keep the first convergent denominator r with a^r = 1, then try
/// gcd(a^{r/2} - 1, N).
inline FactorAttempt factor_attempt(OrderFinder& finder, std::uint64_t N, std::uint64_t a, unsigned samples,
                                    std::uint64_t seed) {
    FactorAttempt at;
    at.a = a;
    std::uint64_t d = std::gcd(a, N);
    if (d != 1) {
        at.divisor = d;
        at.outcome = "lucky_gcd";
        return at;
    }
    std::uint64_t m = finder.register_size();
    for (unsigned s = 0; s < samples && !at.r; s++) {
        std::uint64_t y = finder.sample(a, derive_seed(seed, s));
        at.ys.push_back(y);
        auto cf = continued_fraction_post(y, m, N);
        if (cf && pow_mod(a, cf->r, N) == 1) {
            at.r = cf->r;
        }
    }
    if (!at.r) {
        at.outcome = "no_order";
        return at;
    }
    if (at.r % 2) {
        at.outcome = "odd_order";
        return at;
    }
    std::uint64_t half = pow_mod(a, at.r / 2, N);
    d = std::gcd((half + N - 1) % N, N);
    if (d > 1 && d < N) {
        at.divisor = d;
        at.outcome = "found";
    } else {
        at.outcome = "trivial_root";
    }
    return at;
}

inline FactorResult factor(std::uint64_t N, std::uint64_t seed, const FactorOptions& opts = {}) {
    if (N < 4 || N >= max_factor_modulus) {
        throw ValueError("N must lie in [4, 2^20)");
    }
    if (is_prime(N)) {
        throw ValueError(std::to_string(N) + " is prime");
    }
    FactorResult res;
    res.N = N;
    if (N % 2 == 0) {
        res.divisor = 2;
        res.method = "even";
        return res;
    }
    if (auto p = prime_power_base(N)) {
        res.divisor = p;
        res.method = "prime_power";
        return res;
    }
    OrderFinder finder(N, opts.order);
    std::mt19937_64 pick(derive_seed(seed, 0));
    for (unsigned i = 0; i < opts.max_attempts; i++) {
        std::uint64_t a = i < opts.forced_bases.size() ? opts.forced_bases[i] : 2 + pick() % (N - 3);
        auto at = factor_attempt(finder, N, a, std::max(1u, opts.samples_per_base), derive_seed(seed, i + 1));
        res.trace.push_back(at);
        if (at.divisor) {
            res.divisor = at.divisor;
            res.method = at.outcome == "lucky_gcd" ? "lucky_gcd" : "quantum";
            if (!res.success()) {
                throw ConsistencyError("factor produced a non-divisor");
            }
            return res;
        }
    }
    return res;
}

/// Two-sided p-value of the pooled two-proportion z test.
inline double two_proportion_p_value(std::size_t s1, std::size_t n1, std::size_t s2, std::size_t n2) {
    if (!n1 || !n2) {
        throw ValueError("two_proportion_p_value: empty sample");
    }
    double p1 = static_cast<double>(s1) / n1, p2 = static_cast<double>(s2) / n2;
    double p = static_cast<double>(s1 + s2) / static_cast<double>(n1 + n2);
    double se = std::sqrt(p * (1 - p) * (1.0 / n1 + 1.0 / n2));
    if (se == 0) {
        return p1 == p2 ? 1.0 : 0.0;
    }
    return std::erfc(std::abs(p1 - p2) / se / std::sqrt(2.0));
}

/// Total variation distance between two count histograms over [0, size).
inline double tv_distance(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    double na = 0, nb = 0;
    for (auto v : a) {
        na += static_cast<double>(v);
    }
    for (auto v : b) {
        nb += static_cast<double>(v);
    }
    double tv = 0;
    for (std::size_t i = 0; i < std::max(a.size(), b.size()); i++) {
        double pa = i < a.size() ? a[i] / na : 0, pb = i < b.size() ? b[i] / nb : 0;
        tv += std::abs(pa - pb);
    }
    return tv / 2;
}

}  // namespace qftkit
