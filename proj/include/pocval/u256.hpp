// pocval: exploit PoC validation for MiniSol contracts
// Copyright 2026 The pocval Authors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <stdexcept>
#include <string>

namespace pocval
{
// Unsigned 256-bit word. Arithmetic wraps modulo 2^256, which is exactly the
// Unchecked execution mode; Checked mode adds explicit range tests on top.
using u256 = boost::multiprecision::uint256_t;

// Signed, unbounded. Used for balance deltas and profit sums where values can
// go negative and sums can exceed one word.
using bigint = boost::multiprecision::cpp_int;

// Exact rational, for valuation rates.
using rational = boost::multiprecision::cpp_rational;

inline u256 u256_max() noexcept
{
    return std::numeric_limits<u256>::max();
}

inline std::string to_dec(const u256& v)
{
    return v.str();
}

inline std::string to_dec(const bigint& v)
{
    return v.str();
}

inline bigint bigint_from_dec(const std::string& s)
{
    if (s.empty())
        throw std::invalid_argument{"empty integer literal"};
    std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
    if (i == s.size())
        throw std::invalid_argument{"malformed integer literal: " + s};
    for (; i < s.size(); ++i)
        if (s[i] < '0' || s[i] > '9')
            throw std::invalid_argument{"malformed integer literal: " + s};
    return bigint{s};
}

// Parses a decimal string into a u256. Throws std::invalid_argument on
// malformed input or a value above 2^256-1.
inline u256 u256_from_dec(const std::string& s)
{
    const bigint wide = bigint_from_dec(s);
    if (wide < 0 || wide > bigint{u256_max()})
        throw std::invalid_argument{"value out of u256 range: " + s};
    return u256{wide};
}

}  // namespace pocval
