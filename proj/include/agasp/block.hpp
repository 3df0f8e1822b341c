// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/transaction.hpp"

#include <vector>

namespace agasp {

struct Block {
    std::uint64_t number = 0;
    Hash32 parent_hash;
    SimTime timestamp = 0;
    std::vector<Transaction> transactions;
    std::uint64_t gas_used_total = 0; // sum over txs of min(gasUsed, gasLimit)
    std::uint64_t block_gas_limit = 0;
    Address miner;
    Hash32 hash;

    Hash32 compute_hash() const;
};

// Block 0: no transactions, zero parent, timestamp 0.
Block make_genesis(std::uint64_t block_gas_limit);

} // namespace agasp
