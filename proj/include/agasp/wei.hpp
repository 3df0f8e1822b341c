// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <string>

namespace agasp {

// All currency amounts are integer wei. 1 Ether = 10^18 wei, 1 gwei = 10^9
// wei. 128 bits cover any balance or fee reachable in a run; display
// conversions to dollars live in the experiments layer.
using Wei = unsigned __int128;

constexpr Wei kWeiPerGwei = 1'000'000'000ull;
constexpr Wei kWeiPerEther = kWeiPerGwei * kWeiPerGwei;

std::string wei_to_string(Wei v);
Wei wei_from_string(const std::string& s);

constexpr Wei gwei(std::uint64_t n)
{
    return static_cast<Wei>(n) * kWeiPerGwei;
}

constexpr Wei ether(std::uint64_t n)
{
    return static_cast<Wei>(n) * kWeiPerEther;
}

} // namespace agasp
