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

#include "qftkit/qft_pow2.hpp"

#include <gtest/gtest.h>

#include <boost/math/special_functions/binomial.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cmath>
#include <random>
#include <set>

#include "testing.hpp"

using namespace qftkit;
using namespace qftkit::testing;

namespace {

using big = boost::multiprecision::cpp_bin_float_50;

std::vector<Complex> kron(const std::vector<Complex>& lo, const std::vector<Complex>& hi) {
    std::vector<Complex> out(lo.size() * hi.size());
    for (std::size_t b = 0; b < hi.size(); b++) {
        for (std::size_t a = 0; a < lo.size(); a++) {
            out[b * lo.size() + a] = lo[a] * hi[b];
        }
    }
    return out;
}

std::vector<Complex> basis_column(std::uint64_t x, unsigned n) {
    std::vector<Complex> v(std::size_t{1} << n);
    v[x] = 1;
    return v;
}

double fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex ip = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        ip += std::conj(a[i]) * b[i];
    }
    return std::norm(ip);
}

double euclid(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    double d = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        d += std::norm(a[i] - b[i]);
    }
    return std::sqrt(d);
}

std::vector<std::uint32_t> concat(const std::vector<RegisterSpec>& regs) {
    std::vector<std::uint32_t> out;
    for (const auto& r : regs) {
        out.insert(out.end(), r.begin(), r.end());
    }
    return out;
}

bool cone_has_all_inputs(const Circuit& c, std::uint32_t out, const RegisterSpec& inputs) {
    auto cone = light_cone(c, out);
    std::set<std::uint32_t> s(cone.begin(), cone.end());
    for (auto w : inputs) {
        if (!s.count(w)) {
            return false;
        }
    }
    return true;
}

// Exact distribution of the per-position vote: u ~ Bin(h, p2) X-basis "2" outcomes and
// v ~ Bin(h, p3) Y-basis "3" outcomes, then argmax with smallest index on ties.
std::array<double, 4> vote_distribution(double theta, unsigned k) {
    auto p = measurement_probs_at(theta);
    unsigned h = k / 2;
    std::array<double, 4> out{};
    for (unsigned u = 0; u <= h; u++) {
        double pu = boost::math::binomial_coefficient<double>(h, u) * std::pow(p[2], u) * std::pow(p[0], h - u);
        for (unsigned v = 0; v <= h; v++) {
            double pv = boost::math::binomial_coefficient<double>(h, v) * std::pow(p[3], v) * std::pow(p[1], h - v);
            std::array<std::uint32_t, 4> c = {h - u, h - v, u, v};
            out[mode_of(c)] += pu * pv;
        }
    }
    return out;
}

double vote_success(const std::vector<double>& theta, unsigned k, std::uint64_t target) {
    unsigned n = static_cast<unsigned>(theta.size());
    std::vector<std::array<double, 4>> dist;
    for (double t : theta) {
        dist.push_back(vote_distribution(t, k));
    }
    double total = 0;
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << (2 * n)); code++) {
        std::vector<int> l(n);
        double p = 1;
        for (unsigned j = 0; j < n; j++) {
            l[j] = static_cast<int>((code >> (2 * j)) & 3);
            p *= dist[j][l[j]];
        }
        if (reconstruct_x(l) == target) {
            total += p;
        }
    }
    return total;
}

// Clearing probability under the mixture reading: Fourier label y drawn with weight
// |<psi_y | prepared>|^2, then a vote over exact copies of psi_y.
double exact_clear_probability(std::uint64_t x, unsigned n, unsigned k, unsigned band) {
    std::vector<double> prepared(n);
    for (unsigned j = 1; j <= n; j++) {
        for (unsigned i = j > band ? j - band : 0; i < j; i++) {
            prepared[j - 1] += ((x >> i) & 1) * std::ldexp(1.0, static_cast<int>(i) - static_cast<int>(j));
        }
    }
    // Position j lives on wire n - j.
    auto state = mu_product_state(std::vector<double>(prepared.rbegin(), prepared.rend())).amplitudes;
    double total = 0;
    for (std::uint64_t y = 0; y < (std::uint64_t{1} << n); y++) {
        auto py = fidelity(dft_column(y, n), state);
        std::vector<double> theta(n);
        for (unsigned j = 1; j <= n; j++) {
            theta[j - 1] = phase_fraction(y, j);
        }
        total += py * vote_success(theta, k, x);
    }
    return total;
}

}  // namespace

TEST(standard_qft, matches_dft) {
    for (unsigned n = 1; n <= 8; n++) {
        Circuit c = standard_qft(n);
        Matrix u = extract_unitary(c);
        EXPECT_LT(spectral_norm(u - dft_reference(std::size_t{1} << n)), 1e-10) << n;
    }
}

TEST(standard_qft, gate_counts_and_depth) {
    for (unsigned n = 1; n <= 20; n++) {
        Circuit c = standard_qft(n);
        auto m = metrics(c);
        EXPECT_EQ(m.gate_histogram["cp"], n * (n - 1) / 2);
        EXPECT_EQ(m.gate_histogram["h"], n);
        EXPECT_EQ(c.size(), n * (n + 1) / 2);
        EXPECT_LE(c.depth(), 2 * n - 1);
    }
}

TEST(standard_qft, small_cases) {
    Circuit one = standard_qft(1);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one.gates()[0].kind, GateKind::h);

    std::multiset<std::string> angles;
    for (const auto& g : standard_qft(3).gates()) {
        if (g.kind == GateKind::cp) {
            angles.insert(g.angle.str());
        }
    }
    EXPECT_EQ(angles, (std::multiset<std::string>{"1/4", "1/8", "1/4"}));
    EXPECT_THROW(standard_qft(0), ValueError);
    EXPECT_THROW(standard_qft(21), ValueError);
}

TEST(banded_qft, full_band_is_standard) {
    for (unsigned n = 1; n <= 8; n++) {
        EXPECT_EQ(banded_qft(n, n), standard_qft(n));
    }
    EXPECT_THROW(banded_qft(4, 0), ValueError);
    EXPECT_THROW(banded_qft(4, 5), ValueError);
}

TEST(banded_qft, error_within_dropped_angle_bound) {
    const unsigned n = 8;
    Matrix f = dft_reference(std::size_t{1} << n);
    for (unsigned b = 1; b <= n; b++) {
        Circuit c = banded_qft(n, b);
        // Independent bound: sum over the rotations that disappear from the full circuit.
        double dropped = 0;
        for (const auto& g : standard_qft(n).gates()) {
            if (g.kind == GateKind::cp && g.angle < DyadicAngle::inverse_power_of_two(b + 1)) {
                dropped += 2 * M_PI * g.angle.turns();
            }
        }
        EXPECT_NEAR(banded_error_bound(n, b), dropped, 1e-12);
        double d = operator_distance(c, f, DistanceMode::exact);
        EXPECT_LE(d, dropped + 1e-12) << b;
        EXPECT_LE(c.size(), n * b + n);
        if (b == n) {
            EXPECT_LT(d, 1e-10);
        }
    }
}

TEST(banded_qft, band_from_error_target) {
    unsigned b = band_for_error(10, 1e-3);
    EXPECT_EQ(b, 10u);  // ceil(log2(10 / 0.001)) = 14, clamped to n
    Circuit c = banded_qft(10, b);
    EXPECT_LE(operator_distance(c, dft_reference(1024), DistanceMode::basis_probe), 1e-3);
    EXPECT_LE(c.size(), 10u * b + 10u);
}

TEST(split_qft, matches_dft) {
    for (unsigned n = 1; n <= 6; n++) {
        Circuit c = split_qft(n);
        Matrix u = extract_unitary(c);
        EXPECT_LT(spectral_norm(u - dft_reference(std::size_t{1} << n)), 1e-9) << n;
    }
}

TEST(split_qft, size_recursion) {
    for (unsigned n = 4; n <= 10; n++) {
        std::size_t expected =
            split_qft((n + 1) / 2).size() + split_qft(n / 2).size() + split_cross_phase(n).size();
        EXPECT_EQ(split_qft(n).size(), expected) << n;
    }
    for (unsigned n = 1; n <= 3; n++) {
        EXPECT_EQ(split_qft(n).size(), standard_qft(n).size());
    }
    EXPECT_THROW(split_qft(11), ValueError);
}

TEST(prep, exact_fidelity_all_inputs) {
    for (unsigned n = 1; n <= 4; n++) {
        Circuit c = prep_exact(n);
        auto data = c.data_wires();
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); x++) {
            SparseState s = SparseState::basis(c.width(), reg(0, n), x);
            apply_sparse(c, s);
            double leak = 0;
            auto out = s.project(data, &leak);
            auto want = kron(basis_column(x, n), dft_column(x, n));
            EXPECT_NEAR(fidelity(want, out), 1.0, 1e-10) << n << " " << x;
            EXPECT_LT(leak, 1e-20);
        }
    }
}

TEST(prep, three_bit_example) {
    // x = 5: the most significant wire holds mu_{0.1}, then mu_{0.01}, then mu_{0.101}.
    Circuit c = prep_exact(3);
    SparseState s = SparseState::basis(c.width(), reg(0, 3), 5);
    apply_sparse(c, s);
    auto out = s.project(reg(0, 6));
    auto want = kron(basis_column(5, 3), mu_product_state({5.0 / 8.0, 1.0 / 4.0, 1.0 / 2.0}).amplitudes);
    EXPECT_NEAR(fidelity(want, out), 1.0, 1e-10);
}

TEST(prep, zero_input_is_uniform) {
    Circuit c = prep_exact(4);
    SparseState s = SparseState::basis(c.width(), reg(0, 4), 0);
    apply_sparse(c, s);
    auto psi = s.project(reg(4, 4));
    for (auto a : psi) {
        EXPECT_NEAR(a.real(), 0.25, 1e-12);
        EXPECT_NEAR(a.imag(), 0.0, 1e-12);
    }
}

TEST(prep, approx_error_and_identity_at_full_band) {
    for (unsigned n = 1; n <= 6; n++) {
        EXPECT_EQ(prep_approx(n, n), prep_exact(n));
    }
    const unsigned n = 6, band = 4;
    Circuit c = prep_approx(n, band);
    double worst = 0;
    for (std::uint64_t x = 0; x < 64; x++) {
        SparseState s = SparseState::basis(c.width(), reg(0, n), x);
        apply_sparse(c, s);
        auto out = s.project(c.data_wires());
        worst = std::max(worst, euclid(out, kron(basis_column(x, n), dft_column(x, n))));
    }
    EXPECT_GT(worst, 0.0);
    EXPECT_LE(worst, n * 2 * M_PI * std::ldexp(1.0, -static_cast<int>(band)));
    EXPECT_LE(worst, prep_error_bound(n, band));
}

TEST(prep, size_and_depth_scaling) {
    double c_size = 0;
    for (unsigned n = 4; n <= 12; n++) {
        for (unsigned band = 1; band <= n; band++) {
            c_size = std::max(c_size, static_cast<double>(prep_approx(n, band).size()) / (n * band));
        }
    }
    EXPECT_LE(c_size, 6.0);
    for (unsigned n = 2; n <= 64; n *= 2) {
        std::size_t d = prep_exact(n).depth();
        EXPECT_LE(d, 2 * static_cast<std::size_t>(std::ceil(std::log2(n))) + 3) << n;
    }
}

TEST(copy_fourier, trivial_and_exact) {
    EXPECT_EQ(copy_fourier(3, 1).size(), 0u);
    for (unsigned n = 1; n <= 2; n++) {
        for (unsigned k = 1; k <= 3; k++) {
            Circuit c = copy_fourier(n, k);
            for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); x++) {
                SparseState s = SparseState::from_dense(c.width(), reg((k - 1) * n, n), dft_column(x, n));
                apply_sparse(c, s);
                double leak = 0;
                auto out = s.project(c.data_wires(), &leak);
                std::vector<Complex> want{1.0};
                for (unsigned r = 0; r < k; r++) {
                    want = kron(want, dft_column(x, n));
                }
                EXPECT_NEAR(fidelity(want, out), 1.0, 1e-10) << n << " " << k << " " << x;
            }
        }
    }
}

TEST(copy_fourier, subtraction_adds_fourier_labels) {
    const unsigned n = 3;
    Circuit sub = build_subtractor(reg(0, n), reg(n, n));
    std::mt19937_64 rng(5);
    for (int t = 0; t < 12; t++) {
        std::uint64_t x = rng() & 7, y = rng() & 7;
        SparseState s = SparseState::from_dense(sub.width(), reg(0, 2 * n), kron(dft_column(x, n), dft_column(y, n)));
        apply_sparse(sub, s);
        auto out = s.project(reg(0, 2 * n));
        EXPECT_NEAR(fidelity(kron(dft_column((x + y) & 7, n), dft_column(y, n)), out), 1.0, 1e-10);
    }
}

TEST(copy_fourier, depth_scaling) {
    for (unsigned n : {4u, 8u, 16u}) {
        for (unsigned k : {2u, 4u, 8u, 16u}) {
            double logkn = std::log2(static_cast<double>(k) * n);
            EXPECT_LE(copy_fourier(n, k).depth(), 12.0 * logkn * logkn) << n << " " << k;
        }
    }
}

TEST(phase_erase, vote_logic_matches_classical_estimator) {
    std::mt19937_64 rng(17);
    for (unsigned n : {1u, 2u, 5u}) {
        for (unsigned k : {2u, 4u, 6u, 8u}) {
            Circuit c(n);
            std::vector<RegisterSpec> regs;
            for (unsigned r = 0; r < k; r++) {
                regs.push_back(c.add_ancillas(n));
            }
            emit_vote_estimate(c, reg(0, n), regs);
            unsigned total = n * k;
            std::uint64_t cases = total <= 12 ? (std::uint64_t{1} << total) : 3000;
            for (std::uint64_t t = 0; t < cases; t++) {
                std::uint64_t bits = total <= 12 ? t : rng();
                std::vector<bool> state(c.width(), false);
                OutcomeTally tally;
                tally.counts.assign(n, {0, 0, 0, 0});
                for (unsigned r = 0; r < k; r++) {
                    for (unsigned w = 0; w < n; w++) {
                        bool b = (bits >> (r * n + w)) & 1;
                        state[regs[r][w]] = b;
                        unsigned j = n - w;  // wire w of a copy carries position n - w
                        tally.counts[j - 1][r < k / 2 ? (b ? 2 : 0) : (b ? 3 : 1)]++;
                    }
                }
                std::vector<int> l(n);
                for (unsigned j = 0; j < n; j++) {
                    l[j] = mode_of(tally.counts[j]);
                }
                evaluate_classical(c, state);
                ASSERT_EQ(read_register(state, reg(0, n)), reconstruct_x(l)) << n << " " << k << " " << bits;
                for (unsigned r = 0; r < k; r++) {
                    for (unsigned w = 0; w < n; w++) {
                        ASSERT_EQ(state[regs[r][w]], static_cast<bool>((bits >> (r * n + w)) & 1));
                    }
                }
                for (std::uint32_t w = regs.back().back() + 1; w < c.width(); w++) {
                    ASSERT_FALSE(state[w]);
                }
            }
        }
    }
}

TEST(logdepth_qft, coherent_clear_probability_matches_channel) {
    struct Case {
        unsigned n, k, band;
        double tol;
    };
    for (auto cs : std::vector<Case>{{1, 2, 1, 1e-9}, {2, 2, 2, 1e-9}, {2, 4, 2, 1e-9}, {3, 2, 2, 1e-9},
                                     {3, 4, 1, 1e-9}, {3, 4, 2, 1e-9}}) {
        Circuit c = logdepth_qft(QftPlan{QftPlan::Kind::logdepth, cs.n, cs.band, cs.k});
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << cs.n); x++) {
            SparseState s = SparseState::basis(c.width(), reg(0, cs.n), x);
            apply_sparse(c, s);
            auto m = s.marginal(reg(0, cs.n));
            EXPECT_NEAR(m[0], exact_clear_probability(x, cs.n, cs.k, cs.band), cs.tol)
                << cs.n << " " << cs.k << " " << cs.band << " " << x;
        }
    }
}

TEST(logdepth_qft, channel_sampler_matches_mixture) {
    QftPlan plan{QftPlan::Kind::logdepth, 4, 2, 4};
    const std::size_t trials = 4000;
    for (std::int64_t x : {3, 13}) {
        auto st = run_logdepth_trials(plan, trials, 900 + x, x);
        double p = exact_clear_probability(static_cast<std::uint64_t>(x), 4, 4, 2);
        EXPECT_NEAR(st.cleared_rate(), p, 4 * std::sqrt(p * (1 - p) / trials)) << x;
    }
}

TEST(logdepth_qft, coherent_error_shrinks_with_copies) {
    double prev = 2;
    for (unsigned k : {2u, 4u, 6u}) {
        double d = operator_distance(logdepth_qft(2, k), dft_reference(4), DistanceMode::exact);
        EXPECT_LT(d, prev) << k;
        prev = d;
    }
}

TEST(logdepth_qft, plan_validation) {
    EXPECT_THROW(logdepth_qft(4, 3), ValueError);
    EXPECT_THROW(logdepth_qft(4, 0), ValueError);
    EXPECT_THROW(logdepth_qft(0, 4), ValueError);
    Circuit c = logdepth_qft(4, 4);
    EXPECT_EQ(c.inputs(), reg(0, 4));
    EXPECT_EQ(c.outputs(), reg(4, 4));
}

TEST(logdepth_qft, channel_small_instance) {
    QftPlan plan{QftPlan::Kind::logdepth, 2, 0, 4};
    for (std::int64_t x = 0; x < 4; x++) {
        auto st = run_logdepth_trials(plan, 500, 100 + x, x);
        EXPECT_GE(st.cleared_rate(), 0.5) << x;
        double p = exact_clear_probability(static_cast<std::uint64_t>(x), 2, 4, 2);
        EXPECT_NEAR(st.cleared_rate(), p, 4 * std::sqrt(std::max(0.0, p * (1 - p)) / 500) + 1e-9) << x;
    }
}

TEST(logdepth_qft, channel_failure_bound) {
    for (auto [n, k] : std::vector<std::pair<unsigned, unsigned>>{{8, 16}, {8, 32}, {8, 48}, {16, 48}, {32, 64}}) {
        const std::size_t trials = 2000;
        QftPlan plan{QftPlan::Kind::logdepth, n, 0, k};
        auto st = run_logdepth_trials(plan, trials, 7 * n + k);
        double b = failure_bound(n, k);
        double sigma = std::sqrt(b * (1 - b) / trials);
        EXPECT_GE(st.cleared_rate(), 1 - b - 3 * sigma) << n << " " << k;
    }
}

TEST(logdepth_qft, depth_and_size_certificate) {
    auto cert = logdepth_certificate({4, 8, 16, 32}, {4, 8, 16});
    EXPECT_EQ(cert.rows.size(), 12u);
    for (const auto& r : cert.rows) {
        EXPECT_LE(r.depth, cert.c_depth * (std::log2(r.n) + std::log2(r.k)) + 1e-9);
        EXPECT_LE(r.size, cert.c_size * r.n * r.k + 1e-9);
    }
    EXPECT_LE(cert.worst_doubling_ratio, 1.5);
    EXPECT_GT(cert.worst_doubling_ratio, 1.0);
}

TEST(overlap, cosine_product) {
    EXPECT_NEAR(overlap_witness(5, 3).inner_product, std::cos(M_PI / 4), 1e-15);
    double p = cos_product(64);
    EXPECT_GT(p, 0.6366);
    EXPECT_LT(p, 0.6367);
    big q = 1;
    for (int t = 2; t <= 64; t++) {
        q *= boost::multiprecision::cos(boost::math::constants::pi<big>() / boost::multiprecision::pow(big(2), t));
    }
    big two_over_pi = 2 / boost::math::constants::pi<big>();
    EXPECT_LT(std::fabs(static_cast<double>(q - two_over_pi)), 1e-18);
    EXPECT_LT(std::fabs(p - static_cast<double>(two_over_pi)), 1e-9);
}

TEST(overlap, tail_bound) {
    for (unsigned i = 1; i <= 8; i++) {
        auto t = cos_tail(i);
        big q = 1;
        for (unsigned s = i + 1; s < i + 120; s++) {
            q *= boost::multiprecision::cos(boost::math::constants::pi<big>() / boost::multiprecision::pow(big(2), s));
        }
        EXPECT_NEAR(t.tail, static_cast<double>(q), 1e-14);
        EXPECT_LE(t.bound, t.tail) << i;
    }
}

TEST(overlap, witness_trace_distance) {
    for (unsigned n = 2; n <= 20; n++) {
        for (unsigned r = 1; r < n; r++) {
            auto w = overlap_witness(n, r, n <= 16);
            EXPECT_LT(w.trace_distance, 0.7712);
            if (n <= 16) {
                EXPECT_NEAR(w.direct, w.inner_product, 1e-9) << n << " " << r;
            }
        }
    }
    EXPECT_THROW(overlap_witness(4, 0), ValueError);
    EXPECT_THROW(overlap_witness(4, 4), ValueError);
}

TEST(light_cone, top_output_sees_every_input) {
    for (unsigned n = 1; n <= 10; n++) {
        for (const Circuit& c : {standard_qft(n), split_qft(n)}) {
            EXPECT_TRUE(cone_has_all_inputs(c, c.outputs()[0], c.inputs())) << c.name() << " " << n;
            EXPECT_GE(c.depth(), static_cast<std::size_t>(std::ceil(std::log2(n))));
        }
        Circuit p = prep_exact(n);
        EXPECT_TRUE(cone_has_all_inputs(p, n, reg(0, n))) << n;
    }
}
