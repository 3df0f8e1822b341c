// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/netsim/rng.hpp"
#include "agasp/sim_time.hpp"
#include "agasp/wei.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace agasp::netsim {

// Piecewise-constant load phase. The schedule cycles; multipliers scale the
// base arrival rate and the gasPrice median.
struct LoadPhase {
    double duration_seconds = 0.0;
    double rate_multiplier = 1.0;
    double median_multiplier = 1.0;
};

// Background traffic: Poisson arrivals of plain transfers whose gasPrice is
// lognormal around a time-varying median. Senders rotate round-robin
// through a dedicated funded account pool sized so that a sender rarely has
// two transactions pending at once; the pool then behaves like many
// independent transactors and block packing is a pure gasPrice auction.
struct LoadModel {
    double arrival_rate_per_second = 0.0;
    Wei gas_price_median = gwei(12);
    double gas_price_sigma = 0.6;
    std::uint64_t gas_limit_per_tx = 21'000;
    std::uint32_t account_count = 1'024;
    Wei account_funding = ether(10'000);
    Wei tx_value = gwei(1'000'000); // 10^15 wei per transfer
    std::vector<LoadPhase> phases; // empty = constant load

    double cycle_seconds() const;
    double rate_multiplier_at(double t) const;
    double median_multiplier_at(double t) const;

    // Same average arrival rate and median, multipliers collapsed to their
    // time-weighted means (the "no variation" control).
    LoadModel flattened() const;
};

// Samples the arrival stream. Draw order is fixed: one Exp(1) per arrival
// gap and two uniforms per gasPrice, so the stream depends only on
// (model, seed), never on foreground traffic.
class BackgroundSampler {
public:
    explicit BackgroundSampler(const LoadModel& model) : model_(model) {}

    // Next arrival strictly after `from`; nullopt when the rate is zero.
    std::optional<SimTime> next_arrival(SimTime from, Rng& rng) const;

    Wei sample_gas_price(SimTime at, Rng& rng) const;

private:
    LoadModel model_;
};

} // namespace agasp::netsim
