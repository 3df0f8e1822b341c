// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include <cstdint>
#include <random>

namespace agasp::netsim {

// Single seeded generator owned by the kernel; every stochastic draw in a
// simulation flows through it. Distribution transforms are hand-rolled so a
// (seed, config) pair pins the exact draw sequence rather than depending on
// the standard library's unspecified distribution algorithms.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    // Uniform in [0, 1), 53-bit resolution.
    double uniform01()
    {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    // Exponential with the given mean (inverse CDF).
    double exponential(double mean)
    {
        return -mean * std::log(1.0 - uniform01());
    }

    // Standard normal via Box-Muller; always consumes two draws.
    double normal01()
    {
        double u1 = uniform01();
        double u2 = uniform01();
        while (u1 == 0.0) u1 = uniform01();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }

    // Uniform integer in [0, n).
    std::uint64_t uniform_below(std::uint64_t n)
    {
        return static_cast<std::uint64_t>(uniform01() * static_cast<double>(n)) % n;
    }

private:
    std::mt19937_64 gen_;
};

} // namespace agasp::netsim
