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

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qftkit/circuit.hpp"
#include "qftkit/revarith.hpp"
#include "qftkit/sim.hpp"

namespace qftkit::testing {

/// Runs a classical circuit with the given registers loaded; every other wire starts at 0.
inline std::vector<bool> run_classical(const Circuit& c,
                                       const std::vector<std::pair<RegisterSpec, std::uint64_t>>& loads) {
    std::vector<bool> bits(c.width(), false);
    for (const auto& [reg, value] : loads) {
        write_register(bits, reg, value);
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

inline RegisterSpec reg(std::uint32_t start, std::uint32_t n) { return detail::span_register(start, n); }

inline std::uint64_t mask(std::uint32_t n) { return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1; }

}  // namespace qftkit::testing
