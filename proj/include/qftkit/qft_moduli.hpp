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

// Fourier transforms for moduli that are not powers of two, at matrix scale: the
// mixed-radix (CRT) factorization of F_m and the estimate of x from psi_x mod m using a
// power-of-two inverse transform.

#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

#include "qftkit/sim.hpp"

namespace qftkit {

/// m = m_1 ... m_k with pairwise coprime factors, f_j = m / m_j and g_j = f_j^{-1} mod m_j.
struct CrtBasis {
    std::uint64_t m = 1;
    std::vector<std::uint64_t> factors;
    std::vector<std::uint64_t> f;
    std::vector<std::uint64_t> g;
};

/// Inverse of a modulo n, or 0 when none exists (n = 1 gives 0 as well).
inline std::uint64_t inverse_mod(std::uint64_t a, std::uint64_t n) {
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(n), new_r = static_cast<std::int64_t>(a % n);
    while (new_r != 0) {
        std::int64_t q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) {
        return 0;
    }
    return static_cast<std::uint64_t>(t < 0 ? t + static_cast<std::int64_t>(n) : t);
}

inline CrtBasis make_crt_basis(const std::vector<std::uint64_t>& factors) {
    if (factors.empty()) {
        throw ValueError("CRT basis needs at least one factor");
    }
    CrtBasis b;
    b.factors = factors;
    for (auto mj : factors) {
        if (mj < 2) {
            throw ValueError("CRT factors must be at least 2");
        }
        b.m *= mj;
    }
    for (std::size_t i = 0; i < factors.size(); i++) {
        for (std::size_t j = i + 1; j < factors.size(); j++) {
            if (std::gcd(factors[i], factors[j]) != 1) {
                throw ValueError("CRT factors " + std::to_string(factors[i]) + " and " + std::to_string(factors[j]) +
                                 " are not coprime");
            }
        }
    }
    for (auto mj : factors) {
        std::uint64_t fj = b.m / mj;
        b.f.push_back(fj);
        b.g.push_back(inverse_mod(fj % mj, mj));
    }
    return b;
}

/// Coprime prime-power factorization of m, smallest prime first.
inline CrtBasis crt_basis_for(std::uint64_t m) {
    std::vector<std::uint64_t> parts;
    std::uint64_t rest = m;
    for (std::uint64_t p = 2; p * p <= rest; p++) {
        if (rest % p == 0) {
            std::uint64_t q = 1;
            while (rest % p == 0) {
                rest /= p;
                q *= p;
            }
            parts.push_back(q);
        }
    }
    if (rest > 1) {
        parts.push_back(rest);
    }
    return make_crt_basis(parts);
}

/// Mixed-radix index of the residue tuple of x, first factor most significant.
inline std::uint64_t crt_index(const CrtBasis& b, std::uint64_t x) {
    std::uint64_t idx = 0;
    for (auto mj : b.factors) {
        idx = idx * mj + x % mj;
    }
    return idx;
}

/// Residues from a mixed-radix index.
inline std::vector<std::uint64_t> crt_digits(const CrtBasis& b, std::uint64_t idx) {
    std::vector<std::uint64_t> d(b.factors.size());
    for (std::size_t j = b.factors.size(); j-- > 0;) {
        d[j] = idx % b.factors[j];
        idx /= b.factors[j];
    }
    return d;
}

/// x = sum_j f_j g_j x_j mod m.
inline std::uint64_t crt_combine(const CrtBasis& b, const std::vector<std::uint64_t>& residues) {
    unsigned __int128 acc = 0;
    for (std::size_t j = 0; j < residues.size(); j++) {
        acc += static_cast<unsigned __int128>(b.f[j]) * b.g[j] % b.m * residues[j];
    }
    return static_cast<std::uint64_t>(acc % b.m);
}

struct CrtMaps {
    Matrix C;  // |x> -> |x mod m_1, ..., x mod m_k>
    Matrix A;  // |x_1, ..., x_k> -> |g_1 x_1, ..., g_k x_k>
};

inline CrtMaps crt_maps(const CrtBasis& b) {
    if (b.m > 4096) {
        throw CapacityError("crt_maps supports m <= 4096");
    }
    auto m = static_cast<Eigen::Index>(b.m);
    CrtMaps out{Matrix::Zero(m, m), Matrix::Zero(m, m)};
    for (std::uint64_t x = 0; x < b.m; x++) {
        out.C(static_cast<Eigen::Index>(crt_index(b, x)), static_cast<Eigen::Index>(x)) = 1;
        auto d = crt_digits(b, x);
        for (std::size_t j = 0; j < d.size(); j++) {
            d[j] = d[j] * b.g[j] % b.factors[j];
        }
        std::uint64_t to = 0;
        for (std::size_t j = 0; j < d.size(); j++) {
            to = to * b.factors[j] + d[j];
        }
        out.A(static_cast<Eigen::Index>(to), static_cast<Eigen::Index>(x)) = 1;
    }
    return out;
}

/// Kronecker product with `a` on the more significant index.
inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

/// C^dagger (F_{m_1} (x) ... (x) F_{m_k}) A C.
inline Matrix mixed_radix_qft(const CrtBasis& b) {
    if (b.m > 1024) {
        throw CapacityError("mixed_radix_qft supports m <= 1024");
    }
    auto maps = crt_maps(b);
    Matrix f = dft_reference(b.factors[0]);
    for (std::size_t j = 1; j < b.factors.size(); j++) {
        f = kron(f, dft_reference(b.factors[j]));
    }
    return maps.C.adjoint() * f * maps.A * maps.C;
}

/// Distribution of the estimate round(z m / 2^k) mod m after measuring the inverse
/// 2^k-point transform of psi_x mod m (zero-padded from m to 2^k amplitudes).
inline std::vector<double> modulus_estimate_distribution(std::uint64_t m, std::uint64_t x, unsigned k_bits) {
    if (m < 2 || m > 512 || x >= m) {
        throw ValueError("modulus estimate: need 2 <= m <= 512 and x < m");
    }
    if (k_bits > 14 || (std::uint64_t{1} << k_bits) < m) {
        throw CapacityError("modulus estimate: need m <= 2^k_bits <= 2^14");
    }
    std::uint64_t big = std::uint64_t{1} << k_bits;
    std::vector<double> dist(m, 0.0);
    double norm = 1.0 / std::sqrt(static_cast<double>(m) * static_cast<double>(big));
    for (std::uint64_t z = 0; z < big; z++) {
        // sum_y e^{2 pi i y (x/m - z/2^k)}: a geometric series in y.
        Complex amp = 0;
        for (std::uint64_t y = 0; y < m; y++) {
            double turns = static_cast<double>((x * y) % m) / static_cast<double>(m) -
                           static_cast<double>((z * y) % big) / static_cast<double>(big);
            amp += std::polar(1.0, 2.0 * M_PI * turns);
        }
        std::uint64_t est = static_cast<std::uint64_t>(std::llround(static_cast<double>(z * m) / big)) % m;
        dist[est] += std::norm(amp * norm);
    }
    return dist;
}

struct ModulusEstimate {
    double success_probability = 0;  // exact per-sample probability of estimating x
    double empirical_success = 0;    // fraction of the drawn samples equal to x
    std::uint64_t mode = 0;
    bool mode_correct = false;
};

/// Draws `copies` estimates from a precomputed distribution and takes the mode (smallest
/// value on ties).
inline ModulusEstimate sample_modulus_estimate(const std::vector<double>& dist, std::uint64_t x, unsigned copies,
                                               std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<unsigned> counts(dist.size(), 0);
    unsigned hits = 0;
    for (unsigned s = 0; s < copies; s++) {
        double u = uniform01(rng);
        std::size_t v = 0;
        double acc = dist[0];
        while (u >= acc && v + 1 < dist.size()) {
            acc += dist[++v];
        }
        counts[v]++;
        hits += v == x;
    }
    ModulusEstimate e;
    e.success_probability = dist[x];
    e.empirical_success = copies ? static_cast<double>(hits) / copies : 0.0;
    e.mode = static_cast<std::uint64_t>(std::max_element(counts.begin(), counts.end()) - counts.begin());
    e.mode_correct = e.mode == x;
    return e;
}

/// k_bits = floor(log2 m) + extra_bits.
inline unsigned modulus_estimate_bits(std::uint64_t m, unsigned extra_bits = 3) {
    return static_cast<unsigned>(std::bit_width(m) - 1) + extra_bits;
}

inline ModulusEstimate arbitrary_modulus_estimate(std::uint64_t m, std::uint64_t x, unsigned copies,
                                                  std::uint64_t seed, unsigned extra_bits = 3) {
    auto dist = modulus_estimate_distribution(m, x, modulus_estimate_bits(m, extra_bits));
    return sample_modulus_estimate(dist, x, copies, seed);
}

}  // namespace qftkit
