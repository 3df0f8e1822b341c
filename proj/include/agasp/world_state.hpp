// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/bytes.hpp"
#include "agasp/wei.hpp"

#include <cstdint>
#include <map>
#include <string>

namespace agasp {

enum class AccountKind : std::uint8_t {
    User = 0,
    Contract = 1,
};

struct Account {
    Wei balance = 0;
    std::uint64_t nonce = 0;
    AccountKind kind = AccountKind::User;
};

// Posted station listing. Prices are wei per milligallon, one entry per
// fuel type; a listing can be replaced but never removed.
struct StationInfo {
    Address station;
    Wei min_deposit = 0;
    std::map<std::string, Wei> prices;
    std::uint64_t last_updated_block = 0;
};

// Escrowed vehicle deposit. The price snapshot is copied from the station
// listing at creation time and never changes; settlement always prices
// against the snapshot.
struct DepositRecord {
    Address vehicle;
    Address station;
    Wei amount = 0;
    std::map<std::string, Wei> price_snapshot;
    std::uint64_t created_block = 0;
};

// Storage of the single pre-installed purchase contract. Deposits are keyed
// by vehicle: one active deposit per vehicle globally.
struct ContractStorage {
    std::map<Address, StationInfo> stations;
    std::map<Address, DepositRecord> deposits;

    Wei escrow_total() const;
};

struct WorldState {
    std::map<Address, Account> accounts;
    Address contract_address;
    ContractStorage contract;

    const Account* find(const Address& addr) const;
    Account& at(const Address& addr);
    // Creates the account if absent (transfer to a fresh address).
    Account& get_or_create(const Address& addr);

    Wei balance(const Address& addr) const;
    Wei total_wei() const;

    // Digest over the canonical serialization of accounts and contract
    // storage; two states are equivalent iff their digests match.
    Hash32 state_hash() const;
};

// The contract account's address, fixed at genesis.
Address contract_genesis_address();

} // namespace agasp
