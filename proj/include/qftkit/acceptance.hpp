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

// The acceptance battery: eight pass/fail checks with pinned tolerances, each printed as
// one line by the `accept` command and by the acceptance test binary.

#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "qftkit/phasest.hpp"
#include "qftkit/qft_moduli.hpp"
#include "qftkit/qft_pow2.hpp"
#include "qftkit/revarith.hpp"
#include "qftkit/shor.hpp"
#include "qftkit/sim.hpp"

namespace qftkit {

struct AcceptanceOptions {
    bool quick = false;  // smaller sample counts, same tolerances
    std::uint64_t seed = 2026;
};

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail;
    double seconds = 0;

    std::string line() const {
        std::ostringstream o;
        o << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << " " << name << ": " << detail << " ("
          << std::fixed;
        o.precision(1);
        o << seconds << "s)";
        return o.str();
    }
};

namespace accept_detail {

/// Accumulates sub-checks; the criterion passes iff every one does.
struct Checks {
    bool ok = true;
    std::ostringstream text;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            text << "[failed: " << what << "] ";
        }
    }
    template <class T>
    void note(const std::string& key, T value) {
        text << key << "=" << value << " ";
    }
};

inline std::string fmt(double v) {
    std::ostringstream o;
    o.precision(4);
    o << v;
    return o.str();
}

inline std::vector<Complex> kron(const std::vector<Complex>& lo, const std::vector<Complex>& hi) {
    std::vector<Complex> out(lo.size() * hi.size());
    for (std::size_t b = 0; b < hi.size(); b++) {
        for (std::size_t a = 0; a < lo.size(); a++) {
            out[b * lo.size() + a] = lo[a] * hi[b];
        }
    }
    return out;
}

inline double fidelity(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    Complex ip = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        ip += std::conj(a[i]) * b[i];
    }
    return std::norm(ip);
}

inline std::vector<bool> run_classical(const Circuit& c,
                                       const std::vector<std::pair<RegisterSpec, std::uint64_t>>& loads) {
    std::vector<bool> bits(c.width(), false);
    for (const auto& [r, v] : loads) {
        write_register(bits, r, v);
    }
    evaluate_classical(c, bits);
    return bits;
}

inline bool ancillas_clean(const Circuit& c, const std::vector<bool>& bits) {
    for (std::uint32_t w = c.num_data(); w < c.width(); w++) {
        if (bits[w]) {
            return false;
        }
    }
    return true;
}

inline std::uint64_t low_mask(unsigned n) { return (std::uint64_t{1} << n) - 1; }

}  // namespace accept_detail

inline CriterionResult accept_exact_qft(const AcceptanceOptions&) {
    accept_detail::Checks ck;
    double worst = 0;
    for (unsigned n = 1; n <= 8; n++) {
        Circuit c = standard_qft(n);
        Matrix f = dft_reference(std::size_t{1} << n);
        worst = std::max(worst, spectral_norm(extract_unitary(c) - f));
        auto m = metrics(c);
        ck.check(m.gate_histogram["cp"] == n * (n - 1) / 2 && m.gate_histogram["h"] == n && m.size == n * (n + 1) / 2,
                 "gate counts n=" + std::to_string(n));
        ck.check(m.depth <= 2 * n - 1, "depth n=" + std::to_string(n));
        if (n <= 6) {
            worst = std::max(worst, spectral_norm(extract_unitary(split_qft(n)) - f));
        }
    }
    ck.check(worst <= 1e-9, "operator norm");
    ck.note("max_norm_error", accept_detail::fmt(worst));
    ck.note("tol", "1e-9");
    return {1, "exact QFT", ck.ok, ck.text.str()};
}

inline CriterionResult accept_banded(const AcceptanceOptions&) {
    accept_detail::Checks ck;
    const unsigned n = 8;
    Matrix f = dft_reference(std::size_t{1} << n);
    double worst_ratio = 0;
    for (unsigned b = 1; b <= n; b++) {
        Circuit c = banded_qft(n, b);
        double d = operator_distance(c, f, DistanceMode::exact);
        double bound = banded_error_bound(n, b);
        ck.check(d <= bound + 1e-12, "n=8 b=" + std::to_string(b) + " above bound");
        ck.check(c.size() <= n * b + n, "size n=8 b=" + std::to_string(b));
        if (bound > 0) {
            worst_ratio = std::max(worst_ratio, d / bound);
        }
    }
    unsigned b10 = band_for_error(10, 1e-3);
    Circuit c10 = banded_qft(10, b10);
    double d10 = operator_distance(c10, dft_reference(1024), DistanceMode::basis_probe);
    ck.check(d10 <= 1e-3, "n=10 probe distance");
    ck.check(c10.size() <= 10 * b10 + 10, "size n=10");
    ck.note("n8_worst_distance_over_bound", accept_detail::fmt(worst_ratio));
    ck.note("n10_band", b10);
    ck.note("n10_probe_distance", accept_detail::fmt(d10));
    return {2, "banded approximation", ck.ok, ck.text.str()};
}

inline CriterionResult accept_logdepth_certificate(const AcceptanceOptions&) {
    accept_detail::Checks ck;
    auto cert = logdepth_certificate({4, 8, 16, 32}, {4, 8, 16});
    double size_lo = 1e300, size_hi = 0;
    for (const auto& r : cert.rows) {
        ck.check(r.depth <= cert.c_depth * (std::log2(r.n) + std::log2(r.k)) + 1e-9, "depth fit");
        double s = static_cast<double>(r.size) / (r.n * r.k);
        size_lo = std::min(size_lo, s);
        size_hi = std::max(size_hi, s);
    }
    // Sublinear in n: doubling n must multiply the depth by clearly less than 2.
    ck.check(cert.worst_doubling_ratio <= 1.5, "depth doubling ratio");
    ck.note("c_depth", accept_detail::fmt(cert.c_depth));
    ck.note("c_size", accept_detail::fmt(cert.c_size));
    ck.note("size_per_nk_range", accept_detail::fmt(size_lo) + ".." + accept_detail::fmt(size_hi));
    ck.note("worst_doubling_ratio", accept_detail::fmt(cert.worst_doubling_ratio));
    return {3, "logdepth certificates", ck.ok, ck.text.str()};
}

inline CriterionResult accept_components(const AcceptanceOptions&) {
    using namespace accept_detail;
    Checks ck;
    double worst_prep = 0;
    for (unsigned n = 1; n <= 4; n++) {
        Circuit c = prep_exact(n);
        auto x_wires = detail::span_register(0, n);
        for (std::uint64_t x = 0; x <= low_mask(n); x++) {
            auto s = SparseState::basis(c.width(), x_wires, x);
            apply_sparse(c, s);
            std::vector<Complex> ex(std::size_t{1} << n);
            ex[x] = 1;
            worst_prep = std::max(worst_prep, std::abs(1 - fidelity(kron(ex, dft_column(x, n)), s.project(c.data_wires()))));
        }
    }
    ck.check(worst_prep <= 1e-10, "prep fidelity");
    double worst_copy = 0;
    for (unsigned n = 1; n <= 2; n++) {
        for (unsigned k = 1; k <= 3; k++) {
            Circuit c = copy_fourier(n, k);
            for (std::uint64_t x = 0; x <= low_mask(n); x++) {
                auto s = SparseState::from_dense(c.width(), detail::span_register((k - 1) * n, n), dft_column(x, n));
                apply_sparse(c, s);
                std::vector<Complex> want{1.0};
                for (unsigned r = 0; r < k; r++) {
                    want = kron(want, dft_column(x, n));
                }
                worst_copy = std::max(worst_copy, std::abs(1 - fidelity(want, s.project(c.data_wires()))));
            }
        }
    }
    ck.check(worst_copy <= 1e-10, "copy fidelity");
    // Prefix sums and their inverse on three 2-bit registers.
    auto pa = prefix_add(3, 2);
    auto ts = telescoping_subtract(3, 2);
    bool scan_ok = true;
    for (std::uint64_t v = 0; v < 64; v++) {
        std::uint64_t a = v & 3, b = (v >> 2) & 3, d = v >> 4;
        std::vector<std::pair<RegisterSpec, std::uint64_t>> in{
            {detail::span_register(0, 2), a}, {detail::span_register(2, 2), b}, {detail::span_register(4, 2), d}};
        auto bits = run_classical(pa, in);
        scan_ok &= ancillas_clean(pa, bits) && read_register(bits, detail::span_register(0, 6)) ==
                                                   (a | ((a + b) & 3) << 2 | ((a + b + d) & 3) << 4);
        in[1].second = (a + b) & 3;
        in[2].second = (a + b + d) & 3;
        bits = run_classical(ts, in);
        scan_ok &= ancillas_clean(ts, bits) && read_register(bits, detail::span_register(0, 6)) == v;
    }
    ck.check(scan_ok, "prefix_add / telescoping_subtract");
    bool arith_ok = true;
    for (unsigned n = 1; n <= 4; n++) {
        auto c = build_adder(detail::span_register(0, n), detail::span_register(n, n));
        for (std::uint64_t x = 0; x <= low_mask(n); x++) {
            for (std::uint64_t y = 0; y <= low_mask(n); y++) {
                auto bits = run_classical(c, {{detail::span_register(0, n), x}, {detail::span_register(n, n), y}});
                arith_ok &= read_register(bits, detail::span_register(n, n)) == ((x + y) & low_mask(n)) &&
                            read_register(bits, detail::span_register(0, n)) == x && ancillas_clean(c, bits);
            }
        }
    }
    for (auto [n, m] : std::vector<std::pair<unsigned, unsigned>>{{4, 2}, {5, 2}, {6, 3}}) {
        auto c = build_multiplier(n, m);
        for (std::uint64_t v = 0; v <= low_mask(n); v++) {
            std::uint64_t x = v & low_mask(n - m), y = v >> (n - m);
            auto bits = run_classical(c, {{detail::span_register(0, n), v}});
            arith_ok &= read_register(bits, detail::span_register(n, n)) == ((x * y) & low_mask(n)) &&
                        ancillas_clean(c, bits);
        }
    }
    ck.check(arith_ok, "adder / multiplier");
    ck.note("prep_infidelity", fmt(worst_prep));
    ck.note("copy_infidelity", fmt(worst_copy));
    ck.note("prefix_scan", scan_ok ? "exact" : "wrong");
    ck.note("adder_multiplier", arith_ok ? "exact" : "wrong");
    return {4, "component unitarity", ck.ok, ck.text.str()};
}

inline CriterionResult accept_phase_estimation(const AcceptanceOptions& opt) {
    accept_detail::Checks ck;
    const unsigned n = 8, k = 48;
    const std::size_t trials = opt.quick ? 500 : 2000;
    std::mt19937_64 pick(derive_seed(opt.seed, 5));
    std::size_t failures = 0;
    for (std::size_t t = 0; t < trials; t++) {
        std::uint64_t x = pick() & accept_detail::low_mask(n);
        failures += !erase_trial(x, n, k, derive_seed(opt.seed, 1000 + t)).success;
    }
    double bound = failure_bound(n, k);
    double rate = static_cast<double>(failures) / trials;
    double slack = 3 * std::sqrt(bound * (1 - bound) / trials);
    ck.check(rate <= bound + slack, "erase failure rate");
    // Every promise-valid outcome string decodes to its own x.
    bool decode_ok = true;
    for (unsigned m = 1; m <= 10 && decode_ok; m++) {
        for (std::uint64_t x = 0; x < (std::uint64_t{1} << m) && decode_ok; x++) {
            std::vector<std::vector<int>> sets;
            for (unsigned j = 1; j <= m; j++) {
                std::vector<int> s;
                for (int l = 0; l < 4; l++) {
                    double d = std::fabs(phase_fraction(x, j) - l / 4.0);
                    if (std::min(d, 1 - d) < 0.25) {
                        s.push_back(l);
                    }
                }
                sets.push_back(s);
            }
            std::vector<std::size_t> idx(m, 0);
            std::vector<int> l(m);
            while (true) {
                for (unsigned j = 0; j < m; j++) {
                    l[j] = sets[j][idx[j]];
                }
                decode_ok &= promise_holds(l, x) && reconstruct_x(l) == x;
                unsigned j = 0;
                while (j < m && ++idx[j] == sets[j].size()) {
                    idx[j++] = 0;
                }
                if (j == m) {
                    break;
                }
            }
        }
    }
    ck.check(decode_ok, "exhaustive decode");
    double min_max = 1;
    const int grid = 100000;
    for (int i = 0; i < grid; i++) {
        auto p = measurement_probs_at(static_cast<double>(i) / grid);
        min_max = std::min(min_max, *std::max_element(p.begin(), p.end()));
    }
    double floor = 0.5 + std::sqrt(2.0) / 4;
    ck.check(min_max >= floor - 1e-9, "min-max probability");
    ck.note("failure_rate", accept_detail::fmt(rate));
    ck.note("bound", accept_detail::fmt(bound));
    ck.note("slack", accept_detail::fmt(slack));
    ck.note("trials", trials);
    ck.note("decode", decode_ok ? "exact" : "wrong");
    ck.note("min_max_prob", accept_detail::fmt(min_max));
    return {5, "phase estimation", ck.ok, ck.text.str()};
}

inline CriterionResult accept_overlap_numerics(const AcceptanceOptions&) {
    accept_detail::Checks ck;
    double p = cos_product(64);
    ck.check(p > 0.6366 && p < 0.6367, "cos product window");
    ck.check(std::fabs(p - 2 / M_PI) <= 1e-9, "cos product vs 2/pi");
    for (unsigned i = 1; i <= 8; i++) {
        auto t = cos_tail(i);
        ck.check(t.bound <= t.tail, "tail bound i=" + std::to_string(i));
    }
    double worst_td = 0;
    for (unsigned n = 2; n <= 20; n++) {
        for (unsigned r = 1; r < n; r++) {
            worst_td = std::max(worst_td, overlap_witness(n, r, n <= 12).trace_distance);
        }
    }
    ck.check(worst_td < 0.7712, "trace distance");
    bool cones = true;
    for (unsigned n = 1; n <= 10; n++) {
        std::vector<Circuit> builders{standard_qft(n), split_qft(n)};
        for (const auto& c : builders) {
            auto cone = light_cone(c, c.outputs()[0]);
            for (auto w : c.inputs()) {
                cones &= std::find(cone.begin(), cone.end(), w) != cone.end();
            }
            cones &= c.depth() >= static_cast<std::size_t>(std::ceil(std::log2(n)));
        }
    }
    ck.check(cones, "light cones");
    ck.note("cos_product", accept_detail::fmt(p));
    ck.note("max_trace_distance", accept_detail::fmt(worst_td));
    ck.note("light_cones", cones ? "full" : "partial");
    return {6, "overlap numerics", ck.ok, ck.text.str()};
}

inline CriterionResult accept_moduli(const AcceptanceOptions& opt) {
    accept_detail::Checks ck;
    double worst = 0;
    for (std::uint64_t m : {6u, 12u, 15u, 30u, 105u}) {
        worst = std::max(worst, spectral_norm(mixed_radix_qft(crt_basis_for(m)) - dft_reference(m)));
    }
    ck.check(worst <= 1e-10, "mixed-radix identity");
    double min_success = 1, min_mode = 1;
    const unsigned seeds = opt.quick ? 100 : 200;
    for (std::uint64_t m : {5u, 7u, 12u}) {
        for (std::uint64_t x = 0; x < m; x++) {
            auto d = modulus_estimate_distribution(m, x, modulus_estimate_bits(m));
            min_success = std::min(min_success, d[x]);
            unsigned ok = 0;
            for (unsigned s = 0; s < seeds; s++) {
                ok += sample_modulus_estimate(d, x, 25, derive_seed(opt.seed, m * 1000 + x * 10 + s)).mode_correct;
            }
            min_mode = std::min(min_mode, static_cast<double>(ok) / seeds);
        }
    }
    ck.check(min_success > 0.5, "per-sample success");
    ck.check(min_mode >= 0.99, "mode recovery");
    ck.note("max_identity_error", accept_detail::fmt(worst));
    ck.note("min_success", accept_detail::fmt(min_success));
    ck.note("min_mode_recovery", accept_detail::fmt(min_mode));
    return {7, "non-power-of-two moduli", ck.ok, ck.text.str()};
}

inline CriterionResult accept_factoring(const AcceptanceOptions& opt) {
    accept_detail::Checks ck;
    bool fifteen = true;
    for (auto kind : {QftPlan::Kind::standard, QftPlan::Kind::logdepth}) {
        FactorOptions fo;
        fo.order = {OrderBackend::gate, kind, 48};
        for (std::uint64_t s = 0; s < 5; s++) {
            auto r = factor(15, derive_seed(opt.seed, s), fo);
            fifteen &= r.divisor == 3 || r.divisor == 5;
        }
    }
    ck.check(fifteen, "N=15 gate backend");
    const unsigned seeds = opt.quick ? 40 : 100;
    unsigned worst_ok = seeds;
    for (std::uint64_t N : {21u, 33u, 35u}) {
        unsigned ok = 0;
        for (unsigned s = 0; s < seeds; s++) {
            auto r = factor(N, derive_seed(opt.seed, 7000 + s));
            ok += r.success() && r.trace.size() <= 10;
        }
        worst_ok = std::min(worst_ok, ok);
    }
    ck.check(worst_ok >= 0.95 * seeds, "analytic success rate");
    OrderFinder gate(15, {OrderBackend::gate});
    OrderFinder analytic(15, {OrderBackend::analytic});
    std::vector<std::size_t> hg(256), ha(256);
    for (std::uint64_t s = 0; s < 2000; s++) {
        hg[gate.sample(7, derive_seed(opt.seed, 20000 + s))]++;
        ha[analytic.sample(7, derive_seed(opt.seed, 40000 + s))]++;
    }
    double tv = tv_distance(hg, ha);
    ck.check(tv <= 0.08, "gate vs analytic TV");
    ck.note("fifteen", fifteen ? "3_or_5" : "wrong");
    ck.note("min_success", std::to_string(worst_ok) + "/" + std::to_string(seeds));
    ck.note("tv_distance", accept_detail::fmt(tv));
    return {8, "factoring", ck.ok, ck.text.str()};
}

/// Runs every criterion in order; `on_result` sees each one as it finishes.
inline std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& opt,
                                                   const std::function<void(const CriterionResult&)>& on_result = {}) {
    using Fn = CriterionResult (*)(const AcceptanceOptions&);
    const Fn all[] = {accept_exact_qft, accept_banded,        accept_logdepth_certificate, accept_components,
                      accept_phase_estimation, accept_overlap_numerics, accept_moduli, accept_factoring};
    std::vector<CriterionResult> out;
    for (Fn f : all) {
        auto t0 = std::chrono::steady_clock::now();
        CriterionResult r;
        try {
            r = f(opt);
        } catch (const std::exception& e) {
            r.id = static_cast<int>(out.size()) + 1;
            r.name = "error";
            r.pass = false;
            r.detail = e.what();
        }
        r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (on_result) {
            on_result(r);
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace qftkit
