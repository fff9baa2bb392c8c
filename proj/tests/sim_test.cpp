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

#include "qftkit/sim.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qftkit;

namespace {

StateVector random_state(std::uint32_t q, std::mt19937_64& rng) {
    std::normal_distribution<double> g;
    std::vector<Complex> a(std::size_t{1} << q);
    double n = 0;
    for (auto& z : a) {
        z = {g(rng), g(rng)};
        n += std::norm(z);
    }
    for (auto& z : a) {
        z /= std::sqrt(n);
    }
    return StateVector::from(std::move(a));
}

Circuit random_unitary_circuit(std::uint32_t width, std::mt19937_64& rng) {
    Circuit c(width);
    for (int i = 0; i < 50; i++) {
        std::uint32_t a = rng() % width, b = rng() % width, t = rng() % width;
        auto ang = DyadicAngle::from(static_cast<std::int64_t>(rng() % 256), 8);
        switch (rng() % 5) {
            case 0: c.h(a); break;
            case 1: c.p(a, ang); break;
            case 2:
                if (a != b) {
                    c.cp(a, b, ang);
                }
                break;
            case 3:
                if (a != b) {
                    c.cnot(a, b);
                }
                break;
            default:
                if (a != b && a != t && b != t) {
                    c.ccx(a, b, t);
                }
                break;
        }
    }
    return c;
}

}  // namespace

TEST(sim, hadamard_on_zero) {
    Circuit c(1);
    c.h(0);
    auto run = apply_circuit(c, StateVector::basis(1, 0), 0);
    ASSERT_NEAR(run.final.amplitudes[0].real(), M_SQRT1_2, 1e-15);
    ASSERT_NEAR(run.final.amplitudes[1].real(), M_SQRT1_2, 1e-15);
}

TEST(sim, controlled_half_turn) {
    Circuit c(2);
    c.cp(0, 1, DyadicAngle::from(1, 1));
    auto run = apply_circuit(c, StateVector::basis(2, 3), 0);
    ASSERT_NEAR(std::abs(run.final.amplitudes[3] + 1.0), 0, 1e-15);
}

TEST(sim, capacity_and_width_errors) {
    ASSERT_THROW(StateVector::basis(27, 0), CapacityError);
    Circuit c(2);
    ASSERT_THROW(apply_circuit(c, StateVector::basis(3, 0), 0), StructuralError);
    Circuit big(13);
    ASSERT_THROW(extract_unitary(big), CapacityError);
}

TEST(sim, unitary_of_hadamard_and_empty) {
    Circuit h(1);
    h.h(0);
    ASSERT_LT((extract_unitary(h) - dft_reference(2)).norm(), 1e-15);
    ASSERT_LT((extract_unitary(Circuit(2)) - Matrix::Identity(4, 4)).norm(), 1e-15);
}

TEST(sim, dft_reference_entries) {
    ASSERT_EQ(dft_reference(1)(0, 0), Complex(1.0));
    auto f4 = dft_reference(4);
    ASSERT_LT(std::abs(f4(1, 3) - Complex(0, -0.5)), 1e-15);
    ASSERT_THROW(dft_reference(4097), CapacityError);
}

TEST(sim, matches_matrix_on_random_inputs) {
    std::mt19937_64 rng(21);
    for (std::uint32_t q = 1; q <= 8; q++) {
        auto c = random_unitary_circuit(q, rng);
        auto u = extract_unitary(c);
        for (int t = 0; t < 100; t++) {
            auto in = random_state(q, rng);
            auto out = apply_circuit(c, in, 0).final;
            Eigen::Map<const Eigen::VectorXcd> vin(in.amplitudes.data(), static_cast<Eigen::Index>(in.amplitudes.size()));
            Eigen::Map<const Eigen::VectorXcd> vout(out.amplitudes.data(), static_cast<Eigen::Index>(out.amplitudes.size()));
            ASSERT_LT((u * vin - vout).norm(), 1e-10);
            ASSERT_NEAR(out.norm(), 1.0, 1e-10);
        }
    }
}

TEST(sim, sparse_matches_dense) {
    std::mt19937_64 rng(22);
    for (int trial = 0; trial < 20; trial++) {
        auto c = random_unitary_circuit(6, rng);
        std::uint64_t x = rng() % 64;
        auto dense = apply_circuit(c, StateVector::basis(6, x), 0).final;
        auto sparse = SparseState::basis(6, c.data_wires(), x);
        apply_sparse(c, sparse);
        auto proj = sparse.project(c.data_wires());
        for (std::size_t i = 0; i < 64; i++) {
            ASSERT_LT(std::abs(proj[i] - dense.amplitudes[i]), 1e-12);
        }
    }
}

TEST(sim, seeded_measurement_is_deterministic) {
    Circuit c(3);
    for (std::uint32_t i = 0; i < 3; i++) {
        c.add_classical();
        c.h(i);
    }
    c.cnot(0, 1);
    for (std::uint32_t i = 0; i < 3; i++) {
        c.measure(i, Basis::z, i);
    }
    auto a = apply_circuit(c, StateVector::basis(3, 0), 99);
    auto b = apply_circuit(c, StateVector::basis(3, 0), 99);
    ASSERT_EQ(a.classical_record, b.classical_record);
    ASSERT_EQ(a.final.amplitudes, b.final.amplitudes);
    ASSERT_EQ(a.classical_record.size(), 3u);
}

TEST(sim, born_rule_x_basis) {
    // |mu_theta> measured in X: outcome 0 with probability cos^2(pi theta).
    const std::uint32_t shots = 10000;
    for (std::int64_t num : {1, 3, 5, 11}) {
        auto theta = DyadicAngle::from(num, 4);
        Circuit c(1);
        c.add_classical();
        c.h(0);
        c.p(0, theta);
        c.measure(0, Basis::x, 0);
        std::uint32_t zeros = 0;
        for (std::uint32_t s = 0; s < shots; s++) {
            zeros += apply_circuit(c, StateVector::basis(1, 0), derive_seed(5, s)).classical_record.at(0) == 0;
        }
        double p = std::pow(std::cos(M_PI * theta.turns()), 2);
        double sigma = std::sqrt(p * (1 - p) / shots);
        ASSERT_NEAR(zeros / static_cast<double>(shots), p, 3 * sigma + 1e-12);
    }
}

TEST(sim, y_basis_collapse) {
    // (|0> + i|1>)/sqrt2 gives Y outcome 0 deterministically and is left unchanged.
    Circuit c(1);
    c.add_classical();
    c.h(0);
    c.p(0, DyadicAngle::from(1, 2));
    c.measure(0, Basis::y, 0);
    for (std::uint64_t s = 0; s < 20; s++) {
        auto run = apply_circuit(c, StateVector::basis(1, 0), s);
        ASSERT_EQ(run.classical_record.at(0), 0);
        ASSERT_LT(std::abs(run.final.amplitudes[1] - Complex(0, M_SQRT1_2)), 1e-12);
    }
}

TEST(sim, operator_distance_of_phase_error) {
    Circuit c(1);
    c.h(0);
    Circuit bad = c;
    bad.p(0, DyadicAngle::from(1, 1));
    ASSERT_LT(operator_distance(c, dft_reference(2), DistanceMode::exact), 1e-12);
    // H followed by Z differs from H by diag(0, -2) on the output side, so the norm is 2.
    ASSERT_NEAR(operator_distance(bad, dft_reference(2), DistanceMode::exact), 2.0, 1e-12);
    ASSERT_NEAR(operator_distance(bad, extract_unitary(bad), DistanceMode::exact), 0.0, 1e-12);
    ASSERT_LE(operator_distance(bad, dft_reference(2), DistanceMode::basis_probe), 2.0 + 1e-12);
    ASSERT_THROW(operator_distance(c, dft_reference(4), DistanceMode::exact), StructuralError);
}

TEST(sim, dirty_ancilla_is_detected) {
    Circuit c(1);
    auto a = c.add_ancilla();
    c.cnot(0, a);
    ASSERT_THROW(extract_unitary(c), ConsistencyError);
    // basis_probe counts the leaked amplitude as error.
    ASSERT_NEAR(operator_distance(c, Matrix::Identity(2, 2), DistanceMode::basis_probe), std::sqrt(2.0), 1e-12);
}

TEST(sim, trace_distance) {
    auto z = StateVector::basis(1, 0);
    auto o = StateVector::basis(1, 1);
    ASSERT_NEAR(trace_distance_pure(z, z), 0, 1e-15);
    ASSERT_NEAR(trace_distance_pure(z, o), 1, 1e-15);
}

TEST(sim, spectral_norm_power_iteration_agrees) {
    std::mt19937_64 rng(23);
    std::normal_distribution<double> g;
    Matrix a(1100, 40);
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            a(i, j) = {g(rng), g(rng)};
        }
    }
    Eigen::JacobiSVD<Matrix> svd(a);
    ASSERT_NEAR(spectral_norm(a), svd.singularValues()(0), 1e-8);
}

TEST(sim, classical_evaluation) {
    Circuit c(3);
    c.x(0);
    c.ccx(0, 1, 2);
    c.cnot(0, 1);
    std::vector<bool> bits{false, true, false};
    evaluate_classical(c, bits);
    ASSERT_EQ(bits, (std::vector<bool>{true, false, true}));
    Circuit q(1);
    q.h(0);
    std::vector<bool> one{false};
    ASSERT_THROW(evaluate_classical(q, one), StructuralError);
}
