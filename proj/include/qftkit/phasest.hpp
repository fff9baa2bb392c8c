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

// Classical side of Fourier phase estimation: the measurement statistics of one
// mu-qubit in the X and Y bases, per-position mode voting over k copies, and the
// transfer-matrix reconstruction of x from the voted outcomes.
//
// Positions are 1-based as j = 1..n. Position j sees the phase x / 2^j, so x_1 (the
// least significant bit of x) is the first bit recovered.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "qftkit/dyadic.hpp"
#include "qftkit/revarith.hpp"
#include "qftkit/sim.hpp"

namespace qftkit {

/// p_l = cos^2(pi (theta - l/4)) for the four basis states b_l = mu_{l/4}. Outcomes 0 and 2
/// come from the X-basis measurement, 1 and 3 from the Y basis.
inline std::array<double, 4> measurement_probs_at(double theta) {
    std::array<double, 4> p{};
    for (int l = 0; l < 4; l++) {
        double c = std::cos(M_PI * (theta - l / 4.0));
        p[l] = c * c;
    }
    return p;
}

/// Fractional part of x / 2^j as a double. Exact for j <= 53.
inline double phase_fraction(std::uint64_t x, unsigned j) {
    if (j >= 64) {
        return std::ldexp(static_cast<double>(x), -static_cast<int>(j));
    }
    std::uint64_t r = x & ((std::uint64_t{1} << j) - 1);
    return std::ldexp(static_cast<double>(r), -static_cast<int>(j));
}

inline std::array<double, 4> measurement_probs(std::uint64_t x, unsigned j, unsigned n) {
    if (j < 1 || j > n || n > 64 || (n < 64 && x >> n)) {
        throw ValueError("measurement_probs: need 0 <= x < 2^n and 1 <= j <= n");
    }
    return measurement_probs_at(phase_fraction(x, j));
}

struct OutcomeTally {
    std::vector<std::array<std::uint32_t, 4>> counts;  // counts[j - 1][l]
};

struct ModeSample {
    std::vector<int> l;  // l[j - 1]
    OutcomeTally tally;
};

/// Argmax over the four counts; the smallest outcome wins ties.
inline int mode_of(const std::array<std::uint32_t, 4>& c) {
    int best = 0;
    for (int l = 1; l < 4; l++) {
        if (c[l] > c[best]) {
            best = l;
        }
    }
    return best;
}

/// Draws k/2 X-basis and k/2 Y-basis outcomes per position from the given per-position
/// phases and takes the per-position mode.
inline ModeSample sample_and_mode_phases(const std::vector<double>& theta, unsigned k, std::uint64_t seed) {
    if (k < 2 || k % 2 != 0) {
        throw ValueError("copy count k must be even and at least 2");
    }
    std::mt19937_64 rng(seed);
    ModeSample out;
    out.l.resize(theta.size());
    out.tally.counts.resize(theta.size());
    for (std::size_t j = 0; j < theta.size(); j++) {
        auto p = measurement_probs_at(theta[j]);
        auto& c = out.tally.counts[j];
        c = {0, 0, 0, 0};
        for (unsigned s = 0; s < k / 2; s++) {
            c[uniform01(rng) < p[0] ? 0 : 2]++;
        }
        for (unsigned s = 0; s < k / 2; s++) {
            c[uniform01(rng) < p[1] ? 1 : 3]++;
        }
        out.l[j] = mode_of(c);
    }
    return out;
}

inline ModeSample sample_and_mode(std::uint64_t x, unsigned n, unsigned k, std::uint64_t seed) {
    if (n < 1 || n > 64 || (n < 64 && x >> n)) {
        throw ValueError("sample_and_mode: need 1 <= n <= 64 and x < 2^n");
    }
    std::vector<double> theta(n);
    for (unsigned j = 1; j <= n; j++) {
        theta[j - 1] = phase_fraction(x, j);
    }
    return sample_and_mode_phases(theta, k, seed);
}

/// True iff |l_j / 4 - x / 2^j|_1 < 1/4 at every position. Exact integer arithmetic.
inline bool promise_holds(const std::vector<int>& l, std::uint64_t x) {
    for (std::size_t idx = 0; idx < l.size(); idx++) {
        unsigned j = static_cast<unsigned>(idx + 1);
        unsigned big = std::max(j, 2u);
        // Compare on the common denominator 2^big: x / 2^j vs l / 4.
        unsigned __int128 mod = static_cast<unsigned __int128>(1) << big;
        unsigned __int128 a = (static_cast<unsigned __int128>(x) << (big - j)) % mod;
        unsigned __int128 b = (static_cast<unsigned __int128>(l[idx] & 3) << (big - 2)) % mod;
        unsigned __int128 d = a >= b ? a - b : b - a;
        d = std::min(d, mod - d);
        if (4 * d >= mod) {
            return false;
        }
    }
    return true;
}

/// One of the four 2x2 0/1 matrices A_0..A_3. Stored as the images of e_1 and e_2 (0 for
/// e_1, 1 for e_2), which is all a column-selecting 0/1 matrix carries.
class TransferMatrix {
  public:
    constexpr TransferMatrix() = default;

    static constexpr TransferMatrix A(int l) {
        switch (l & 3) {
            case 0: return TransferMatrix(0, 1);
            case 1: return TransferMatrix(0, 0);
            case 2: return TransferMatrix(1, 0);
            default: return TransferMatrix(1, 1);
        }
    }

    /// Entry at 1-based (row, col).
    constexpr int at(int row, int col) const { return (col == 1 ? img1_ : img2_) == row - 1 ? 1 : 0; }

    constexpr TransferMatrix operator*(const TransferMatrix& rhs) const {
        auto apply = [&](int v) { return v == 0 ? img1_ : img2_; };
        return TransferMatrix(apply(rhs.img1_), apply(rhs.img2_));
    }

    /// The l with A_l == *this.
    constexpr int index() const {
        for (int l = 0; l < 4; l++) {
            if (A(l) == *this) {
                return l;
            }
        }
        return -1;
    }

    constexpr bool operator==(const TransferMatrix&) const = default;

  private:
    constexpr TransferMatrix(int img1, int img2) : img1_(img1), img2_(img2) {}

    int img1_ = 0;
    int img2_ = 1;
};

/// Plain 2x2 integer product, used to check TransferMatrix against the matrix definition.
inline std::array<std::array<int, 2>, 2> dense_product(const TransferMatrix& a, const TransferMatrix& b) {
    std::array<std::array<int, 2>, 2> out{};
    for (int r = 1; r <= 2; r++) {
        for (int c = 1; c <= 2; c++) {
            out[r - 1][c - 1] = a.at(r, 1) * b.at(1, c) + a.at(r, 2) * b.at(2, c);
        }
    }
    return out;
}

/// x_j = (A_{l_j} ... A_{l_1})[2,1], every prefix product computed by a parallel scan.
inline std::uint64_t reconstruct_x(const std::vector<int>& l) {
    if (l.size() > 64) {
        throw ValueError("reconstruct_x supports at most 64 positions");
    }
    std::vector<TransferMatrix> m;
    m.reserve(l.size());
    for (int v : l) {
        m.push_back(TransferMatrix::A(v));
    }
    // Later positions multiply on the left.
    prefix_scan(m, [](const TransferMatrix& lo, const TransferMatrix& hi) { return hi * lo; });
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < m.size(); j++) {
        x |= static_cast<std::uint64_t>(m[j].at(2, 1)) << j;
    }
    return x;
}

/// Left-to-right version of reconstruct_x.
inline std::uint64_t reconstruct_x_sequential(const std::vector<int>& l) {
    TransferMatrix acc;
    std::uint64_t x = 0;
    for (std::size_t j = 0; j < l.size(); j++) {
        acc = TransferMatrix::A(l[j]) * acc;
        x |= static_cast<std::uint64_t>(acc.at(2, 1)) << j;
    }
    return x;
}

/// 4 n e^{-k/8}, clamped to [0, 1].
inline double failure_bound(unsigned n, unsigned k) {
    return std::clamp(4.0 * n * std::exp(-static_cast<double>(k) / 8.0), 0.0, 1.0);
}

/// 2 e^{-(pY - pX)^2 t / 2}: tail bound for t Bernoulli(pX) samples outvoting t samples
/// with the larger mean pY.
inline double bernoulli_bound(double p_x, double p_y, double t) {
    if (!(p_x < p_y)) {
        throw ValueError("bernoulli_bound requires pX < pY");
    }
    double d = p_y - p_x;
    return 2.0 * std::exp(-d * d * t / 2.0);
}

/// One pass of the estimator: sample, vote, reconstruct.
struct EraseTrial {
    std::vector<int> l;
    std::uint64_t x_hat = 0;
    bool promise = false;
    bool success = false;
};

inline EraseTrial erase_trial(std::uint64_t x, unsigned n, unsigned k, std::uint64_t seed) {
    auto s = sample_and_mode(x, n, k, seed);
    EraseTrial t;
    t.l = std::move(s.l);
    t.x_hat = reconstruct_x(t.l);
    t.promise = promise_holds(t.l, x);
    t.success = t.x_hat == x;
    return t;
}

}  // namespace qftkit
