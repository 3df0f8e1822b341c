// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/decimal.hpp"

#include <cmath>
#include <stdexcept>

namespace agasp::experiments {

namespace {

constexpr __int128 kPicoScale = static_cast<__int128>(1'000'000'000'000ll);

__int128 div_half_up(__int128 numerator, __int128 denominator)
{
    if (numerator < 0) return -div_half_up(-numerator, denominator);
    return (numerator + denominator / 2) / denominator;
}

} // namespace

Decimal Decimal::from_pico(__int128 pico)
{
    Decimal d;
    d.pico_ = pico;
    return d;
}

Decimal Decimal::from_string(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty decimal");
    std::size_t pos = 0;
    bool negative = s[0] == '-';
    if (negative) pos = 1;
    __int128 integral = 0;
    while (pos < s.size() && s[pos] != '.') {
        char c = s[pos++];
        if (c < '0' || c > '9') throw std::invalid_argument("invalid decimal: " + s);
        integral = integral * 10 + (c - '0');
    }
    __int128 frac = 0;
    int digits = 0;
    if (pos < s.size() && s[pos] == '.') {
        ++pos;
        while (pos < s.size()) {
            char c = s[pos++];
            if (c < '0' || c > '9') throw std::invalid_argument("invalid decimal: " + s);
            if (digits < 12) {
                frac = frac * 10 + (c - '0');
                ++digits;
            }
        }
    }
    for (int i = digits; i < 12; ++i) frac *= 10;
    __int128 pico = integral * kPicoScale + frac;
    return from_pico(negative ? -pico : pico);
}

Decimal Decimal::from_double(double v)
{
    if (!std::isfinite(v)) throw std::invalid_argument("non-finite decimal");
    return from_pico(static_cast<__int128>(std::llround(v * 1e12)));
}

Decimal Decimal::from_wei(Wei amount, const Decimal& usd_per_ether)
{
    // amount and the pico rate both fit well inside 128 bits for realistic
    // fee magnitudes (fees < 10^18 wei, rates < 10^6 USD/Ether).
    __int128 product = static_cast<__int128>(amount) * usd_per_ether.pico_;
    return from_pico(div_half_up(product, static_cast<__int128>(kWeiPerEther)));
}

Decimal Decimal::times(const Decimal& other) const
{
    return from_pico(div_half_up(pico_ * other.pico_, kPicoScale));
}

double Decimal::to_double() const
{
    return static_cast<double>(pico_) / 1e12;
}

std::int64_t Decimal::round_to_cents() const
{
    return static_cast<std::int64_t>(div_half_up(pico_, kPicoScale / 100));
}

std::string Decimal::cents_string() const
{
    std::int64_t cents = round_to_cents();
    bool negative = cents < 0;
    if (negative) cents = -cents;
    std::string out = std::to_string(cents / 100) + ".";
    std::string frac = std::to_string(cents % 100);
    if (frac.size() < 2) frac = "0" + frac;
    out += frac;
    return negative ? "-" + out : out;
}

std::string Decimal::to_string() const
{
    __int128 v = pico_;
    bool negative = v < 0;
    if (negative) v = -v;
    __int128 integral = v / kPicoScale;
    __int128 frac = v % kPicoScale;
    std::string int_part;
    if (integral == 0) {
        int_part = "0";
    } else {
        while (integral > 0) {
            int_part.insert(int_part.begin(), static_cast<char>('0' + static_cast<int>(integral % 10)));
            integral /= 10;
        }
    }
    std::string frac_part;
    __int128 scale = kPicoScale / 10;
    while (scale > 0) {
        frac_part.push_back(static_cast<char>('0' + static_cast<int>(frac / scale)));
        frac %= scale;
        scale /= 10;
    }
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
    std::string out = int_part;
    if (!frac_part.empty()) out += "." + frac_part;
    return negative ? "-" + out : out;
}

} // namespace agasp::experiments
