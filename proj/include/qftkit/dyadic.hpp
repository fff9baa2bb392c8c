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

#include <bit>
#include <charconv>
#include <cmath>
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace qftkit {

/// Raised when a textual or numeric angle cannot be represented exactly.
struct ValueError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Exact phase angle a / 2^b measured in turns, so the gate phase is e^{2 pi i a / 2^b}.
///
/// Always stored reduced (numerator odd, or zero with log_denominator 0) and
/// normalized into [0, 1). Arithmetic is exact modulo 1.
class DyadicAngle {
  public:
    static constexpr unsigned max_log_denominator = 64;

    constexpr DyadicAngle() = default;

    /// numerator / 2^log_denominator, reduced modulo 1.
    static constexpr DyadicAngle from(std::int64_t numerator, unsigned log_denominator) {
        if (log_denominator > max_log_denominator) {
            throw ValueError("dyadic angle denominator exceeds 2^64");
        }
        std::uint64_t num = static_cast<std::uint64_t>(numerator);  // two's complement wrap is mod 2^64
        return make_reduced(num, log_denominator);
    }

    /// The angle 1 / 2^k.
    static constexpr DyadicAngle inverse_power_of_two(unsigned k) {
        if (k == 0) {
            return DyadicAngle{};
        }
        return from(1, k);
    }

    constexpr std::uint64_t numerator() const { return num_; }
    constexpr unsigned log_denominator() const { return log_den_; }
    constexpr bool is_zero() const { return num_ == 0; }

    double turns() const { return std::ldexp(static_cast<double>(num_), -static_cast<int>(log_den_)); }
    double radians() const { return 2.0 * M_PI * turns(); }

    constexpr DyadicAngle operator-() const {
        if (num_ == 0) {
            return *this;
        }
        return make_reduced(~num_ + 1, log_den_);
    }

    constexpr DyadicAngle operator+(DyadicAngle other) const {
        if (num_ == 0) {
            return other;
        }
        if (other.num_ == 0) {
            return *this;
        }
        unsigned den = log_den_ > other.log_den_ ? log_den_ : other.log_den_;
        std::uint64_t a = num_ << (den - log_den_);
        std::uint64_t b = other.num_ << (den - other.log_den_);
        return make_reduced(a + b, den);
    }

    constexpr DyadicAngle operator-(DyadicAngle other) const { return *this + (-other); }

    constexpr bool operator==(const DyadicAngle&) const = default;
    constexpr std::strong_ordering operator<=>(const DyadicAngle& other) const {
        // Compare a/2^p with b/2^q on a common denominator; both numerators are < 2^den.
        unsigned den = log_den_ > other.log_den_ ? log_den_ : other.log_den_;
        unsigned __int128 a = static_cast<unsigned __int128>(num_) << (den - log_den_);
        unsigned __int128 b = static_cast<unsigned __int128>(other.num_) << (den - other.log_den_);
        return a <=> b;
    }

    /// Text form used by the netlist: "0", "a/D" with D = 2^b, or "a/2^64".
    std::string str() const {
        if (num_ == 0) {
            return "0";
        }
        if (log_den_ >= 64) {
            return std::to_string(num_) + "/2^" + std::to_string(log_den_);
        }
        return std::to_string(num_) + "/" + std::to_string(std::uint64_t{1} << log_den_);
    }

    /// Accepts "0", "a/D" with D a power of two, "a/2^b", and an optional leading '-'.
    static DyadicAngle parse(std::string_view text) {
        bool negative = false;
        if (!text.empty() && text.front() == '-') {
            negative = true;
            text.remove_prefix(1);
        }
        auto slash = text.find('/');
        std::uint64_t num = 0;
        if (!parse_u64(text.substr(0, slash), num)) {
            throw ValueError("bad angle numerator in '" + std::string(text) + "'");
        }
        unsigned log_den = 0;
        if (slash != std::string_view::npos) {
            std::string_view den = text.substr(slash + 1);
            if (den.starts_with("2^")) {
                std::uint64_t b = 0;
                if (!parse_u64(den.substr(2), b) || b > max_log_denominator) {
                    throw ValueError("bad angle exponent in '" + std::string(text) + "'");
                }
                log_den = static_cast<unsigned>(b);
            } else {
                std::uint64_t d = 0;
                if (!parse_u64(den, d) || d == 0) {
                    throw ValueError("bad angle denominator in '" + std::string(text) + "'");
                }
                if (!std::has_single_bit(d)) {
                    throw ValueError("angle '" + std::string(text) + "' is not dyadic");
                }
                log_den = static_cast<unsigned>(std::countr_zero(d));
            }
        }
        DyadicAngle a = make_reduced(num, log_den);
        return negative ? -a : a;
    }

  private:
    static constexpr DyadicAngle make_reduced(std::uint64_t num, unsigned log_den) {
        if (log_den < 64) {
            num &= (std::uint64_t{1} << log_den) - 1;
        }
        if (num == 0) {
            return DyadicAngle{};
        }
        unsigned tz = static_cast<unsigned>(std::countr_zero(num));
        if (tz > log_den) {
            tz = log_den;
        }
        DyadicAngle a;
        a.num_ = num >> tz;
        a.log_den_ = log_den - tz;
        return a;
    }

    static bool parse_u64(std::string_view s, std::uint64_t& out) {
        if (s.empty()) {
            return false;
        }
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && ptr == s.data() + s.size();
    }

    std::uint64_t num_ = 0;
    unsigned log_den_ = 0;
};

}  // namespace qftkit
