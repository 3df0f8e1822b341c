// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/wei.hpp"

#include <cstdint>
#include <string>

namespace agasp::experiments {

// Exact decimal with 12 fractional digits, stored as 128-bit integer
// pico-units. Dollar amounts, rates, and gallon counts all fit; rounding to
// cents happens only at display time (half-up).
class Decimal {
public:
    Decimal() = default;

    static Decimal from_string(const std::string& s);
    static Decimal from_double(double v); // exact for <= 12 decimal digits
    static Decimal from_pico(__int128 pico);

    // wei * usd_per_ether / 10^18, rounded half-up at pico precision.
    static Decimal from_wei(Wei amount, const Decimal& usd_per_ether);

    Decimal operator+(const Decimal& other) const { return from_pico(pico_ + other.pico_); }
    Decimal operator-(const Decimal& other) const { return from_pico(pico_ - other.pico_); }
    bool operator==(const Decimal& other) const = default;

    // this * other, rounded half-up at pico precision.
    Decimal times(const Decimal& other) const;

    __int128 pico() const { return pico_; }
    double to_double() const;
    std::int64_t round_to_cents() const; // half-up, non-negative values
    std::string cents_string() const;    // "1.17"
    std::string to_string() const;       // full precision, trailing zeros trimmed

private:
    __int128 pico_ = 0;
};

} // namespace agasp::experiments
