// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/wei.hpp"

#include <algorithm>
#include <stdexcept>

namespace agasp {

std::string wei_to_string(Wei v)
{
    if (v == 0) return "0";
    std::string out;
    while (v > 0) {
        out.push_back(static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Wei wei_from_string(const std::string& s)
{
    if (s.empty()) throw std::invalid_argument("empty wei string");
    Wei v = 0;
    for (char c : s) {
        if (c < '0' || c > '9') throw std::invalid_argument("invalid wei string: " + s);
        Wei next = v * 10 + static_cast<unsigned>(c - '0');
        if (next < v) throw std::overflow_error("wei value out of range: " + s);
        v = next;
    }
    return v;
}

} // namespace agasp
