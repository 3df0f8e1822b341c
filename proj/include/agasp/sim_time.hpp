// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <string>

namespace agasp {

// Simulation clock in integer microseconds. Fixed-point keeps event
// ordering and serialized timestamps exact across runs.
using SimTime = std::uint64_t;

constexpr SimTime kTicksPerSecond = 1'000'000;

SimTime ticks_from_seconds(double seconds);
double seconds_from_ticks(SimTime t);

// Fixed "123.456789" rendering used by the event log and CSV emitters.
std::string format_seconds(SimTime t);

} // namespace agasp
