// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/block.hpp"
#include "agasp/ledger.hpp"

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace agasp {

// Maps each account to the key handle allowed to sign for it. A transaction
// is "signed" iff it was built with the registered handle.
using KeyRegistry = std::map<Address, std::uint64_t>;

struct Violation {
    std::string what;
};

enum class AppendError : std::uint8_t {
    UnknownParent,
    InvalidBlock,
};

struct AppendResult {
    bool ok = true;
    AppendError error = AppendError::InvalidBlock;
    std::vector<Violation> violations;
};

// Append-only block store with longest-chain fork choice; ties keep the
// earliest-received tip. The canonical head state is maintained
// incrementally and can always be recomputed by replay from genesis.
class Chain {
public:
    Chain(std::uint64_t block_gas_limit, WorldState genesis_state, GasSchedule schedule,
          KeyRegistry keys = {});

    const Block& genesis() const;
    const Block& head() const;
    std::uint64_t head_number() const { return head().number; }
    const WorldState& head_state() const { return head_state_; }

    const Block* block_by_hash(const Hash32& hash) const;
    // Canonical-branch lookup.
    const Block* block_by_number(std::uint64_t number) const;
    const std::vector<Receipt>* receipts_for(const Hash32& block_hash) const;

    // Validates without storing: parent linkage, hash integrity, gas
    // accounting, and a full replay of the transactions from the parent
    // state. Returns the list of violations found (empty = ok).
    std::vector<Violation> validate_block(const Block& block) const;

    AppendResult append_block(const Block& block);

    // Recomputes world state by replaying the canonical branch from the
    // genesis allocation.
    WorldState replay_state() const;

    // Walks the canonical branch from genesis, invoking the visitor with
    // each block, its receipts, and the state after applying it.
    void replay_canonical(
        const std::function<void(const Block&, const std::vector<Receipt>&, const WorldState&)>&
            visit) const;

    // Genesis-to-head hashes, in height order.
    std::vector<Hash32> canonical_hashes() const;

    std::size_t block_count() const { return blocks_.size(); }
    const WorldState& genesis_state() const { return genesis_state_; }
    const GasSchedule& gas_schedule() const { return schedule_; }

private:
    struct StoredBlock {
        Block block;
        std::vector<Receipt> receipts;
        std::uint64_t received_seq = 0;
    };

    struct ReplayOutcome {
        std::vector<Violation> violations;
        std::vector<Receipt> receipts;
        WorldState state;
    };

    std::vector<Violation> structural_violations(const Block& block) const;
    ReplayOutcome replay_onto(const WorldState& parent_state, const Block& block) const;
    WorldState state_before(const Block& block) const;
    std::vector<const StoredBlock*> branch_to(const Hash32& tip) const;

    std::map<Hash32, StoredBlock> blocks_;
    Hash32 genesis_hash_;
    Hash32 head_hash_;
    WorldState genesis_state_;
    WorldState head_state_;
    GasSchedule schedule_;
    KeyRegistry keys_;
    std::uint64_t next_received_seq_ = 0;
    std::uint64_t block_gas_limit_ = 0;
};

} // namespace agasp
