// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/transaction.hpp"
#include "agasp/world_state.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace agasp {

// Flat per-function gas amounts. The ledger does not meter individual
// instructions; each contract function costs a fixed, calibrated amount and
// plain transfers cost the standard intrinsic 21000.
struct GasSchedule {
    std::uint64_t base_transfer = 21'000;
    std::map<std::string, std::uint64_t> per_contract_function = {
        {"setGasInfo", 32'308},
        {"sendDeposit", 49'231},
        {"sendFuelUsage", 38'462},
    };

    std::uint64_t gas_for(const Transaction& tx) const;
};

enum class TxStatus : std::uint8_t {
    Success = 0,
    Reverted = 1,
    Invalid = 2, // never applied; used when reporting dropped transactions
};

const char* tx_status_name(TxStatus status);

// Structured log entry emitted into receipts. Field order is part of the
// audit surface, so entries keep insertion order.
struct LogEntry {
    std::string event;
    std::vector<std::pair<std::string, std::string>> fields;

    const std::string* field(const std::string& name) const;
};

struct Receipt {
    Hash32 tx_id;
    TxStatus status = TxStatus::Success;
    std::uint64_t gas_used = 0;
    Wei fee = 0;
    std::vector<LogEntry> logs;
    std::uint64_t block_number = 0;
};

// Fee = gasPrice * min(gasUsed, gasLimit), exact integer arithmetic.
Wei compute_fee(Wei gas_price, std::uint64_t gas_used, std::uint64_t gas_limit);

enum class TxValidity : std::uint8_t {
    Ok = 0,
    UnknownSender,
    BadNonce,
    InsufficientFunds,
};

const char* tx_validity_name(TxValidity v);

// A transaction is valid iff the sender exists, the nonce is the sender's
// next, and the balance covers value + the maximum fee gasPrice * gasLimit.
TxValidity validate_transaction(const WorldState& state, const Transaction& tx);

// Applies a valid transaction: bumps the nonce, charges the fee to the
// miner, then commits the transfer or contract effects. Contract reverts
// roll back value and storage but keep the fee and the nonce bump.
// Precondition: validate_transaction(state, tx) == Ok.
Receipt apply_transaction(WorldState& state, const Transaction& tx, const Address& miner,
                          std::uint64_t block_number, const GasSchedule& schedule);

} // namespace agasp
