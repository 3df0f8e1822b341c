// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/netsim/load_model.hpp"

#include <cmath>

namespace agasp::netsim {

double LoadModel::cycle_seconds() const
{
    double total = 0.0;
    for (const LoadPhase& phase : phases) total += phase.duration_seconds;
    return total;
}

namespace {

const LoadPhase* phase_at(const std::vector<LoadPhase>& phases, double cycle, double t)
{
    if (phases.empty() || cycle <= 0.0) return nullptr;
    double offset = std::fmod(t, cycle);
    for (const LoadPhase& phase : phases) {
        if (offset < phase.duration_seconds) return &phase;
        offset -= phase.duration_seconds;
    }
    return &phases.back();
}

} // namespace

double LoadModel::rate_multiplier_at(double t) const
{
    const LoadPhase* phase = phase_at(phases, cycle_seconds(), t);
    return phase ? phase->rate_multiplier : 1.0;
}

double LoadModel::median_multiplier_at(double t) const
{
    const LoadPhase* phase = phase_at(phases, cycle_seconds(), t);
    return phase ? phase->median_multiplier : 1.0;
}

LoadModel LoadModel::flattened() const
{
    LoadModel flat = *this;
    double cycle = cycle_seconds();
    if (!phases.empty() && cycle > 0.0) {
        double rate_avg = 0.0;
        double median_avg = 0.0;
        for (const LoadPhase& phase : phases) {
            rate_avg += phase.rate_multiplier * phase.duration_seconds / cycle;
            median_avg += phase.median_multiplier * phase.duration_seconds / cycle;
        }
        flat.phases = {LoadPhase{cycle, rate_avg, median_avg}};
    }
    return flat;
}

std::optional<SimTime> BackgroundSampler::next_arrival(SimTime from, Rng& rng) const
{
    if (model_.arrival_rate_per_second <= 0.0) return std::nullopt;
    double target = rng.exponential(1.0); // unit-rate exponential area
    double t = seconds_from_ticks(from);
    double cycle = model_.cycle_seconds();

    if (model_.phases.empty() || cycle <= 0.0) {
        return ticks_from_seconds(t + target / model_.arrival_rate_per_second);
    }

    // Integrate the piecewise-constant rate until the unit-exponential area
    // is consumed. Zero-rate phases pass without consuming area.
    for (int guard = 0; guard < 1'000'000; ++guard) {
        double offset = std::fmod(t, cycle);
        double phase_start = 0.0;
        for (const LoadPhase& phase : model_.phases) {
            double phase_end = phase_start + phase.duration_seconds;
            if (offset < phase_end) {
                double rate = model_.arrival_rate_per_second * phase.rate_multiplier;
                double span = phase_end - offset;
                if (rate > 0.0) {
                    double area = rate * span;
                    if (target <= area) {
                        return ticks_from_seconds(t + target / rate);
                    }
                    target -= area;
                }
                t += span;
                offset = phase_end;
            }
            phase_start = phase_end;
        }
    }
    return std::nullopt; // all phases at rate zero
}

Wei BackgroundSampler::sample_gas_price(SimTime at, Rng& rng) const
{
    double median = static_cast<double>(model_.gas_price_median) *
                    model_.median_multiplier_at(seconds_from_ticks(at));
    double z = rng.normal01();
    double price = median * std::exp(model_.gas_price_sigma * z);
    if (price < 1.0) return 1;
    return static_cast<Wei>(price);
}

} // namespace agasp::netsim
