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

#include "qftkit/netlist.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace qftkit;

TEST(netlist, single_lines) {
    Circuit c(4);
    c.h(3);
    ASSERT_NE(encode_netlist(c).find("\nh 3\n"), std::string::npos);
    Circuit d(5);
    d.cp(4, 2, DyadicAngle::from(1, 3));
    ASSERT_NE(encode_netlist(d).find("\ncp 1/8 2 4\n"), std::string::npos);
}

TEST(netlist, header_and_layers) {
    Circuit c(2);
    c.add_ancilla();
    c.add_classical();
    c.h(0);
    c.cnot(0, 2);
    c.measure(2, Basis::y, 0);
    auto text = encode_netlist(c);
    ASSERT_EQ(text,
              "qubits 2 ancilla 1 classical 1\n"
              "h 0\n"
              "---\n"
              "cnot 0 2\n"
              "---\n"
              "meas y 2 -> c0\n");
}

TEST(netlist, round_trip_random) {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 50; trial++) {
        Circuit c(5, "rand");
        c.set_param("trial", trial);
        c.add_ancillas(2);
        c.add_classical();
        for (int i = 0; i < 60; i++) {
            std::uint32_t a = rng() % 7, b = rng() % 7, t = rng() % 7;
            if (a == b || a == t || b == t) {
                continue;
            }
            auto ang = DyadicAngle::from(static_cast<std::int64_t>(rng()), static_cast<unsigned>(rng() % 65));
            switch (rng() % 7) {
                case 0: c.h(a); break;
                case 1: c.x(a); break;
                case 2: c.p(a, ang); break;
                case 3: c.cp(a, b, ang); break;
                case 4: c.cnot(a, b); break;
                case 5: c.ccx(a, b, t); break;
                default: c.measure(a, static_cast<Basis>(rng() % 3), 0); break;
            }
        }
        if (trial % 3 == 0) {
            c.set_inputs({4, 3, 2, 1, 0});
            c.set_outputs({5, 6, 0, 1, 2});
        }
        auto text = encode_netlist(c);
        auto back = decode_netlist(text);
        ASSERT_EQ(back, c);
        ASSERT_EQ(encode_netlist(back), text);
    }
}

TEST(netlist, parse_errors_carry_line) {
    try {
        decode_netlist("qubits 2 ancilla 0 classical 0\nh 0\nfoo 1\n");
        FAIL();
    } catch (const ParseError& e) {
        ASSERT_EQ(e.line, 3u);
    }
    ASSERT_THROW(decode_netlist("h 0\n"), ParseError);
    ASSERT_THROW(decode_netlist("qubits 2 ancilla 0 classical 0\nh 0\nh 0\n"), ParseError);
    ASSERT_THROW(decode_netlist("qubits 2 ancilla 0 classical 0\ncnot 0\n"), ParseError);
    ASSERT_THROW(decode_netlist("qubits 2 ancilla 0 classical 0\nh 5\n"), ParseError);
    ASSERT_THROW(decode_netlist("qubits 1 ancilla 0 classical 1\nmeas q 0 -> c0\n"), ParseError);
    ASSERT_THROW(decode_netlist("qubits 2 ancilla 0 classical 0\np 1/3 0\n"), ValueError);
}

TEST(netlist, comments_and_alternate_angles) {
    auto c = decode_netlist(
        "# a comment\n"
        "qubits 2 ancilla 0 classical 0\n"
        "p 1/2^3 0  # trailing\n"
        "---\n"
        "cp 3/4 1 0\n");
    ASSERT_EQ(c.size(), 2u);
    ASSERT_EQ(c.gates()[0].angle, DyadicAngle::from(1, 3));
    ASSERT_EQ(c.gates()[1].q[0], 0u);
}
