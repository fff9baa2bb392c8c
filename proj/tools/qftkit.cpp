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

// Command-line front end: build, stats, sim, verify, factor, accept.
//
// Exit codes: 0 success, 1 a check or factorization failed, 2 bad usage or arguments.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "qftkit/acceptance.hpp"
#include "qftkit/netlist.hpp"
#include "qftkit/phasest.hpp"
#include "qftkit/qft_moduli.hpp"
#include "qftkit/qft_pow2.hpp"
#include "qftkit/shor.hpp"

using namespace qftkit;
using json = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t default_seed = 2026;

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag) {
    if (flag) {
        return *flag;
    }
    if (const char* env = std::getenv("QFTKIT_SEED")) {
        try {
            std::size_t used = 0;
            auto v = std::stoull(env, &used);
            if (used == std::string(env).size()) {
                return v;
            }
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("QFTKIT_SEED is not an unsigned integer: ") + env);
    }
    return default_seed;
}

unsigned param_or(const Circuit& c, const std::string& key, unsigned fallback) {
    auto v = c.param(key);
    return v ? static_cast<unsigned>(std::stoul(*v)) : fallback;
}

bool is_qft(const Circuit& c) {
    return c.name() == "standard_qft" || c.name() == "banded_qft" || c.name() == "split_qft";
}

/// Analytic error bound for the circuit families we know by name.
std::optional<double> error_bound_of(const Circuit& c) {
    const auto& nm = c.name();
    unsigned n = param_or(c, "n", 0);
    if (nm == "standard_qft" || nm == "split_qft" || nm == "prep_exact" || nm == "copy_fourier") {
        return 0.0;
    }
    if (nm == "banded_qft") {
        return banded_error_bound(n, param_or(c, "band", n));
    }
    if (nm == "prep_approx") {
        return prep_error_bound(n, param_or(c, "band", n));
    }
    if (nm == "logdepth_qft") {
        // Vote failure probability plus the operator bound of the truncated prep.
        unsigned k = param_or(c, "k", 2);
        return failure_bound(n, k) + prep_error_bound(n, param_or(c, "band", n));
    }
    return std::nullopt;
}

/// Exact operator distance to the DFT for small QFT circuits, else nothing.
std::optional<double> measured_error_of(const Circuit& c) {
    if (!is_qft(c) || c.inputs().size() > 10) {
        return std::nullopt;
    }
    auto n = c.inputs().size();
    auto mode = n <= 8 ? DistanceMode::exact : DistanceMode::basis_probe;
    return operator_distance(c, dft_reference(std::size_t{1} << n), mode);
}

json opt_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json stats_json(const Circuit& c, const std::optional<double>& measured, const std::optional<std::uint64_t>& seed) {
    auto m = metrics(c);
    json j;
    j["n"] = c.param("n") ? json(param_or(c, "n", 0)) : json(c.num_data());
    j["size"] = m.size;
    j["depth"] = m.depth;
    j["width"] = m.width;
    j["gate_histogram"] = m.gate_histogram;
    j["error_bound"] = opt_number(error_bound_of(c));
    j["measured_error"] = opt_number(measured);
    j["seed"] = seed ? json(*seed) : json(nullptr);
    return j;
}

void print_stats_text(const Circuit& c, const json& j) {
    std::cout << "name " << c.name() << "\n";
    for (const auto& [k, v] : j.items()) {
        if (k == "gate_histogram") {
            for (const auto& [g, count] : v.items()) {
                std::cout << "gates." << g << " " << count << "\n";
            }
        } else {
            std::cout << k << " " << v.dump() << "\n";
        }
    }
}

Circuit read_netlist(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw UsageError("cannot read " + path);
    }
    std::stringstream buf;
    buf << in.rdbuf();
    return decode_netlist(buf.str());
}

Circuit build_kind(const std::string& kind, unsigned n, unsigned band, unsigned k) {
    if (kind == "standard") {
        return standard_qft(n);
    }
    if (kind == "banded") {
        return banded_qft(n, band ? band : band_for_error(n, 1e-3));
    }
    if (kind == "split") {
        return split_qft(n);
    }
    if (kind == "logdepth") {
        QftPlan p;
        p.kind = QftPlan::Kind::logdepth;
        p.n = n;
        p.band = band;
        p.copies = k ? k : 4;
        return logdepth_qft(p);
    }
    if (kind == "prep") {
        return prep_exact(n);
    }
    if (kind == "prep-approx") {
        return prep_approx(n, band ? band : n);
    }
    return copy_fourier(n, k ? k : 2);
}

std::uint64_t parse_bits(const std::string& s, std::size_t width) {
    if (s.empty() || s.size() != width || s.find_first_not_of("01") != std::string::npos) {
        throw UsageError("--input must be " + std::to_string(width) + " binary digits, most significant first");
    }
    return std::stoull(s, nullptr, 2);
}

std::string bits_of(std::uint64_t v, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t t = 0; t < width; t++) {
        if ((v >> t) & 1) {
            s[width - 1 - t] = '1';
        }
    }
    return s;
}

int run_verify(const std::string& suite, unsigned n, std::uint64_t seed, bool as_json) {
    AcceptanceOptions opt;
    opt.seed = seed;
    std::vector<CriterionResult> results;
    auto want = [&](const char* s) { return suite == "all" || suite == s; };
    if (want("unitary")) {
        CriterionResult r{0, "unitary", true, ""};
        std::ostringstream d;
        Matrix f = dft_reference(std::size_t{1} << n);
        for (const auto& c : {standard_qft(n), split_qft(std::min(n, 10u)), banded_qft(n, std::max(1u, n / 2))}) {
            if (c.inputs().size() != n) {
                continue;
            }
            double dist = operator_distance(c, f, n <= 8 ? DistanceMode::exact : DistanceMode::basis_probe);
            double bound = *error_bound_of(c);
            bool ok = dist <= bound + 1e-9;
            r.pass &= ok;
            d << c.name() << "=" << dist << (ok ? "" : "[failed]") << " ";
        }
        r.detail = d.str();
        results.push_back(r);
    }
    if (want("arith")) {
        results.push_back(accept_components(opt));
    }
    if (want("phase")) {
        results.push_back(accept_phase_estimation(opt));
    }
    if (want("moduli")) {
        results.push_back(accept_moduli(opt));
    }
    if (want("bounds")) {
        CriterionResult r{0, "bounds", true, ""};
        double p = cos_product(64);
        double td = 0;
        for (unsigned m = 2; m <= 20; m++) {
            for (unsigned s = 1; s < m; s++) {
                td = std::max(td, overlap_witness(m, s, false).trace_distance);
            }
        }
        double min_max = 1;
        for (int i = 0; i < 100000; i++) {
            auto q = measurement_probs_at(i / 100000.0);
            min_max = std::min(min_max, *std::max_element(q.begin(), q.end()));
        }
        r.pass = p > 0.6366 && p < 0.6367 && td < 0.7712 && min_max >= 0.5 + std::sqrt(2.0) / 4 - 1e-9;
        std::ostringstream d;
        d.precision(8);
        d << "cos_product=" << p << " max_trace_distance=" << td << " min_max_prob=" << min_max;
        r.detail = d.str();
        results.push_back(r);
    }
    bool ok = true;
    json arr = json::array();
    for (const auto& r : results) {
        ok &= r.pass;
        if (as_json) {
            arr.push_back({{"suite", r.name}, {"pass", r.pass}, {"detail", r.detail}, {"seed", seed}});
        } else {
            std::cout << r.name << " " << (r.pass ? "PASS" : "FAIL") << " " << r.detail << "\n";
        }
    }
    if (as_json) {
        std::cout << arr.dump(2) << "\n";
    }
    return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"qftkit: QFT circuit synthesis and verification"};
    app.require_subcommand(1);
    app.fallthrough();
    bool as_json = false;
    app.add_flag("--json", as_json, "JSON output")->group("Global");

    std::string kind, out_path;
    unsigned n = 0, band = 0, k = 0;
    auto* build = app.add_subcommand("build", "build a circuit and write its netlist");
    build->add_option("--kind", kind)
        ->required()
        ->check(CLI::IsMember({"standard", "banded", "split", "logdepth", "prep", "prep-approx", "copy"}));
    build->add_option("--n", n)->required()->check(CLI::Range(1u, 64u));
    build->add_option("--band", band)->check(CLI::Range(1u, 64u));
    build->add_option("--k", k)->check(CLI::Range(1u, 256u));
    build->add_option("--out", out_path, "netlist path (stdout when absent)");

    std::string path;
    auto* stats = app.add_subcommand("stats", "report size, depth and error for a netlist");
    stats->add_option("path", path)->required();

    std::string input;
    std::optional<std::uint64_t> seed_flag;
    std::size_t shots = 0;
    auto* sim = app.add_subcommand("sim", "simulate a netlist on a basis input");
    sim->add_option("path", path)->required();
    sim->add_option("--input", input)->required();
    sim->add_option("--seed", seed_flag);
    sim->add_option("--shots", shots)->check(CLI::Range(std::size_t{0}, std::size_t{100000000}));

    std::string suite = "all";
    unsigned verify_n = 6;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("--suite", suite)->check(CLI::IsMember({"unitary", "arith", "phase", "moduli", "bounds", "all"}));
    verify->add_option("--n", verify_n)->check(CLI::Range(1u, 10u));
    verify->add_option("--seed", seed_flag);

    std::uint64_t N = 0;
    std::string backend = "analytic", qft = "standard";
    unsigned retries = 10, copies = 48, samples = 1;
    auto* fac = app.add_subcommand("factor", "factor N by order finding");
    fac->add_option("N", N)->required();
    fac->add_option("--backend", backend)->check(CLI::IsMember({"gate", "analytic"}));
    fac->add_option("--qft", qft)->check(CLI::IsMember({"standard", "logdepth"}));
    fac->add_option("--seed", seed_flag);
    fac->add_option("--max-retries", retries, "bases tried before giving up")->check(CLI::Range(1u, 100000u));
    fac->add_option("--copies", copies, "copies for the logdepth QFT")->check(CLI::Range(2u, 1024u));
    fac->add_option("--samples-per-base", samples)->check(CLI::Range(1u, 1000u));

    bool quick = false;
    auto* acc = app.add_subcommand("accept", "run the acceptance battery");
    acc->add_flag("--quick", quick);
    acc->add_option("--seed", seed_flag);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*build) {
            Circuit c = build_kind(kind, n, band, k);
            std::string text = encode_netlist(c);
            if (out_path.empty()) {
                std::cout << text;
            } else {
                std::ofstream f(out_path);
                if (!(f << text)) {
                    throw UsageError("cannot write " + out_path);
                }
                if (as_json) {
                    std::cout << stats_json(c, std::nullopt, std::nullopt).dump(2) << "\n";
                }
            }
            return 0;
        }
        if (*stats) {
            Circuit c = read_netlist(path);
            json j = stats_json(c, measured_error_of(c), std::nullopt);
            if (as_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                print_stats_text(c, j);
            }
            return 0;
        }
        if (*sim) {
            Circuit c = read_netlist(path);
            std::uint64_t seed = resolve_seed(seed_flag);
            std::size_t in_width = c.inputs().size(), out_width = c.outputs().size();
            std::uint64_t x = parse_bits(input, in_width);
            double leak = 0;
            auto col = output_column(c, x, &leak);
            std::optional<double> err;
            if (is_qft(c) && in_width <= 20) {
                auto want = dft_column(x, static_cast<unsigned>(in_width));
                double d = 0;
                for (std::size_t i = 0; i < col.size(); i++) {
                    d += std::norm(col[i] - want[i]);
                }
                err = std::sqrt(d);
            }
            json j = stats_json(c, err, seed);
            j["input"] = input;
            j["leak"] = leak;
            json amps = json::array();
            for (std::size_t i = 0; i < col.size(); i++) {
                if (std::abs(col[i]) > 1e-12) {
                    amps.push_back({bits_of(i, out_width), col[i].real(), col[i].imag()});
                }
            }
            j["amplitudes"] = amps;
            if (shots) {
                std::vector<double> cdf(col.size());
                double acc_p = 0;
                for (std::size_t i = 0; i < col.size(); i++) {
                    cdf[i] = acc_p += std::norm(col[i]);
                }
                std::map<std::string, std::size_t> counts;
                std::mt19937_64 rng(seed);
                for (std::size_t s = 0; s < shots; s++) {
                    counts[bits_of(sample_index(cdf, rng), out_width)]++;
                }
                j["counts"] = counts;
            }
            if (as_json) {
                std::cout << j.dump(2) << "\n";
            } else {
                for (const auto& a : j["amplitudes"]) {
                    std::cout << a[0].get<std::string>() << " " << a[1].get<double>() << " " << a[2].get<double>()
                              << "\n";
                }
                if (j.contains("counts")) {
                    for (const auto& [b, cnt] : j["counts"].items()) {
                        std::cout << "shots " << b << " " << cnt << "\n";
                    }
                }
                if (err) {
                    std::cout << "measured_error " << *err << "\n";
                }
            }
            return 0;
        }
        if (*verify) {
            return run_verify(suite, verify_n, resolve_seed(seed_flag), as_json);
        }
        if (*fac) {
            std::uint64_t seed = resolve_seed(seed_flag);
            FactorOptions o;
            o.order.backend = backend == "gate" ? OrderBackend::gate : OrderBackend::analytic;
            o.order.qft = qft == "logdepth" ? QftPlan::Kind::logdepth : QftPlan::Kind::standard;
            o.order.copies = copies;
            o.max_attempts = retries;
            o.samples_per_base = samples;
            auto r = factor(N, seed, o);
            json trace = json::array();
            for (const auto& a : r.trace) {
                trace.push_back({{"a", a.a}, {"y", a.ys}, {"r", a.r}, {"divisor", a.divisor}, {"outcome", a.outcome}});
            }
            json j;
            j["N"] = N;
            j["divisor"] = r.divisor ? json(r.divisor) : json(nullptr);
            j["attempts"] = r.trace.size();
            j["method"] = r.method;
            j["seed"] = seed;
            j["trace"] = trace;
            std::cout << j.dump(as_json ? 2 : -1) << "\n";
            return r.success() ? 0 : 1;
        }
        if (*acc) {
            AcceptanceOptions opt;
            opt.quick = quick;
            opt.seed = resolve_seed(seed_flag);
            auto results = run_acceptance(opt, [&](const CriterionResult& r) {
                if (!as_json) {
                    std::cout << r.line() << std::endl;
                }
            });
            bool ok = true;
            json arr = json::array();
            for (const auto& r : results) {
                ok &= r.pass;
                arr.push_back({{"criterion", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail},
                               {"seconds", r.seconds}});
            }
            if (as_json) {
                std::cout << arr.dump(2) << "\n";
            }
            return ok ? 0 : 1;
        }
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ValueError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const CapacityError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
