// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/sim_time.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace agasp {

SimTime ticks_from_seconds(double seconds)
{
    if (seconds < 0.0 || !std::isfinite(seconds)) {
        throw std::invalid_argument("negative or non-finite simulation time");
    }
    return static_cast<SimTime>(std::llround(seconds * static_cast<double>(kTicksPerSecond)));
}

double seconds_from_ticks(SimTime t)
{
    return static_cast<double>(t) / static_cast<double>(kTicksPerSecond);
}

std::string format_seconds(SimTime t)
{
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%llu.%06llu",
                  static_cast<unsigned long long>(t / kTicksPerSecond),
                  static_cast<unsigned long long>(t % kTicksPerSecond));
    return buf;
}

} // namespace agasp
