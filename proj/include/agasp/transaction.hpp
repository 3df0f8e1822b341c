// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/bytes.hpp"
#include "agasp/sim_time.hpp"
#include "agasp/wei.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>

namespace agasp {

// Fee-bearing contract entry points. getGasInfo and verifyDeposit are free
// read-only queries against local chain state and never ride a transaction.
struct SetGasInfoArgs {
    Wei min_deposit = 0;
    std::map<std::string, Wei> prices; // fuel type -> wei per milligallon
};

struct SendDepositArgs {
    Address station;
};

struct SendFuelUsageArgs {
    Address vehicle;
    std::string fuel_type;
    std::uint64_t milligallons = 0;
};

using ContractCall = std::variant<SetGasInfoArgs, SendDepositArgs, SendFuelUsageArgs>;

const char* contract_call_name(const ContractCall& call);

struct Transaction {
    Address sender;
    std::uint64_t nonce = 0; // per-sender sequence, starts at 0
    Address recipient;
    Wei value = 0;
    Wei gas_price = 0;     // wei per gas unit
    std::uint64_t gas_limit = 0;
    std::optional<ContractCall> payload;
    SimTime submit_time = 0;
    // Signature surrogate: the key handle the transaction was built with.
    // Not part of the content id.
    std::uint64_t signer_key = 0;
    Hash32 id;

    void serialize_content(ByteWriter& w) const;
    Hash32 compute_id() const;

    // Upper bound the sender must be able to cover for the transaction to
    // be valid: value + gasPrice * gasLimit.
    Wei max_cost() const;
};

// Builds a transaction and stamps its content id.
Transaction make_transaction(const Address& sender, std::uint64_t nonce, const Address& recipient,
                             Wei value, Wei gas_price, std::uint64_t gas_limit,
                             std::optional<ContractCall> payload, SimTime submit_time,
                             std::uint64_t signer_key);

} // namespace agasp
