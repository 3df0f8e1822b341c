// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/scenario/agents.hpp"

#include "agasp/keys.hpp"

namespace agasp::scenario {

Handshake run_handshake(const netsim::Kernel& kernel, const Address& vehicle_addr,
                        std::uint64_t vehicle_presented_key, const Address& station_addr,
                        std::uint64_t station_presented_key, netsim::Rng& rng)
{
    Handshake hs;
    hs.vehicle = vehicle_addr;
    hs.station = station_addr;
    hs.nonce_vehicle = static_cast<std::uint64_t>(rng.uniform01() * 9.007199254740992e15);
    hs.nonce_station = static_cast<std::uint64_t>(rng.uniform01() * 9.007199254740992e15);

    const KeyRegistry& keys = kernel.keys();
    auto vehicle_key = keys.find(vehicle_addr);
    auto station_key = keys.find(station_addr);
    if (vehicle_key == keys.end() || station_key == keys.end()) return hs;

    // Station challenges the vehicle with nonce_station and vice versa.
    bool vehicle_ok = challenge_response(vehicle_presented_key, hs.nonce_station) ==
                      challenge_response(vehicle_key->second, hs.nonce_station);
    bool station_ok = challenge_response(station_presented_key, hs.nonce_vehicle) ==
                      challenge_response(station_key->second, hs.nonce_vehicle);
    hs.verified = vehicle_ok && station_ok;
    return hs;
}

} // namespace agasp::scenario
