// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/netsim/kernel.hpp"

#include <map>
#include <string>

namespace agasp::scenario {

// Vehicle-side automation. The handshake key normally equals the account
// key; presenting a different one models an impostor at the pump.
struct VehicleAgent {
    Address address;
    std::uint64_t key = 0;
    std::uint64_t handshake_key = 0;
    Address target_station;
    std::uint64_t tank_capacity_milligallons = 15'000;
    std::uint32_t confirmation_depth = 1;
    Wei gas_price = gwei(10);
    std::uint64_t gas_limit = 70'000;
};

struct StationAgent {
    Address address;
    std::uint64_t key = 0;
    Wei min_deposit = 0;
    std::map<std::string, Wei> prices;
    std::uint64_t pump_flow_mgal_per_minute = 10'000; // 10 gal/min
    Wei gas_price = gwei(10);
    std::uint64_t gas_limit = 70'000;
};

// Genesis-funded human account that tops up the vehicle.
struct UserAccount {
    Address address;
    std::uint64_t key = 0;
    Wei gas_price = gwei(10);
};

// Off-chain mutual identification over the short-range channel. Generates
// zero blockchain transactions and pays no fees.
struct Handshake {
    Address vehicle;
    Address station;
    std::uint64_t nonce_vehicle = 0;
    std::uint64_t nonce_station = 0;
    bool verified = false;
};

// Challenge-response against the registered key handles: each side must
// answer the peer's nonce with the response only the registered handle can
// produce.
Handshake run_handshake(const netsim::Kernel& kernel, const Address& vehicle_addr,
                        std::uint64_t vehicle_presented_key, const Address& station_addr,
                        std::uint64_t station_presented_key, netsim::Rng& rng);

} // namespace agasp::scenario
