// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/ledger.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace agasp::netsim {

// Pool of validated pending transactions, indexed per sender by nonce.
// Unlike block-level validity, the pool accepts future nonces so a sender
// can queue several transactions; each entry must individually be coverable
// by the sender's balance and not reuse a spent nonce.
class Mempool {
public:
    enum class AddResult : std::uint8_t { Accepted, Duplicate, Invalid };

    struct Drop {
        Hash32 id;
        std::string reason;
    };

    AddResult add(const Transaction& tx, const WorldState& state, std::string* reject_reason);

    // Greedy block packing: descending gasPrice, ties by earlier pool
    // arrival then lower nonce; per-sender nonce continuity; the sum of
    // selected gasLimits never exceeds blockGasLimit. Tracks per-sender
    // balances across picks so the returned list always applies cleanly.
    std::vector<Transaction> select_transactions(const WorldState& state,
                                                 std::uint64_t block_gas_limit,
                                                 const GasSchedule& schedule) const;

    void remove_included(const std::vector<Transaction>& included);

    // Drops entries invalidated by the new head state (spent nonces,
    // shrunken balances). Returns what was dropped and why.
    std::vector<Drop> revalidate(const WorldState& state);

    bool contains(const Hash32& id) const { return ids_.count(id) != 0; }
    std::size_t size() const { return ids_.size(); }

    std::vector<const Transaction*> pending() const;

private:
    struct Entry {
        Transaction tx;
        std::uint64_t arrival_seq = 0;
    };

    std::map<Address, std::map<std::uint64_t, Entry>> by_sender_;
    std::set<Hash32> ids_;
    std::uint64_t next_arrival_seq_ = 0;
};

} // namespace agasp::netsim
