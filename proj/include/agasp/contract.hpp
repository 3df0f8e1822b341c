// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/ledger.hpp"

namespace agasp::contract {

struct ExecOutcome {
    TxStatus status = TxStatus::Success;
    std::string revert_reason;
    std::vector<LogEntry> logs;
};

// Executes a fee-bearing contract call against world state. Validation
// completes before any mutation, so a revert leaves balances and storage
// untouched; the caller (apply_transaction) has already charged the fee.
// `value` is the wei attached to the call; only sendDeposit accepts value.
ExecOutcome execute(WorldState& state, const Address& caller, Wei value, const ContractCall& call,
                    std::uint64_t block_number);

// Free read-only queries, executed against local chain state. No gas, no
// transaction, no state change.
const StationInfo* get_gas_info(const WorldState& state, const Address& station);
bool verify_deposit(const WorldState& state, const Address& station, const Address& vehicle);

// Settlement arithmetic: payment = amount * snapshotPrice capped at the
// deposit, change = deposit - payment. Exposed for oracles and audits.
struct Settlement {
    Wei payment = 0;
    Wei change = 0;
    bool shortfall = false; // uncapped payment exceeded the deposit
};

Settlement settle(Wei deposit, Wei price_per_milligallon, std::uint64_t milligallons);

} // namespace agasp::contract
