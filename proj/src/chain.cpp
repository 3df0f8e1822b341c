// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/chain.hpp"

#include <algorithm>
#include <stdexcept>

namespace agasp {

Chain::Chain(std::uint64_t block_gas_limit, WorldState genesis_state, GasSchedule schedule,
             KeyRegistry keys)
    : genesis_state_(std::move(genesis_state)),
      schedule_(std::move(schedule)),
      keys_(std::move(keys)),
      block_gas_limit_(block_gas_limit)
{
    Block genesis = make_genesis(block_gas_limit);
    genesis_hash_ = genesis.hash;
    head_hash_ = genesis.hash;
    head_state_ = genesis_state_;
    blocks_.emplace(genesis.hash, StoredBlock{std::move(genesis), {}, next_received_seq_++});
}

const Block& Chain::genesis() const
{
    return blocks_.at(genesis_hash_).block;
}

const Block& Chain::head() const
{
    return blocks_.at(head_hash_).block;
}

const Block* Chain::block_by_hash(const Hash32& hash) const
{
    auto it = blocks_.find(hash);
    return it == blocks_.end() ? nullptr : &it->second.block;
}

const Block* Chain::block_by_number(std::uint64_t number) const
{
    if (number > head().number) return nullptr;
    const StoredBlock* cur = &blocks_.at(head_hash_);
    while (cur->block.number > number) {
        cur = &blocks_.at(cur->block.parent_hash);
    }
    return &cur->block;
}

const std::vector<Receipt>* Chain::receipts_for(const Hash32& block_hash) const
{
    auto it = blocks_.find(block_hash);
    return it == blocks_.end() ? nullptr : &it->second.receipts;
}

std::vector<const Chain::StoredBlock*> Chain::branch_to(const Hash32& tip) const
{
    std::vector<const StoredBlock*> branch;
    Hash32 cur = tip;
    while (true) {
        auto it = blocks_.find(cur);
        if (it == blocks_.end()) throw std::logic_error("broken parent link in block store");
        branch.push_back(&it->second);
        if (cur == genesis_hash_) break;
        cur = it->second.block.parent_hash;
    }
    std::reverse(branch.begin(), branch.end());
    return branch;
}

WorldState Chain::state_before(const Block& block) const
{
    if (block.parent_hash == head_hash_) return head_state_;
    WorldState state = genesis_state_;
    for (const StoredBlock* stored : branch_to(block.parent_hash)) {
        if (stored->block.number == 0) continue;
        auto outcome = replay_onto(state, stored->block);
        state = std::move(outcome.state);
    }
    return state;
}

Chain::ReplayOutcome Chain::replay_onto(const WorldState& parent_state, const Block& block) const
{
    ReplayOutcome out;
    out.state = parent_state;
    std::uint64_t gas_accounted = 0;
    for (std::size_t i = 0; i < block.transactions.size(); ++i) {
        const Transaction& tx = block.transactions[i];
        if (tx.id != tx.compute_id()) {
            out.violations.push_back({"transaction " + std::to_string(i) + ": id mismatch"});
            continue;
        }
        if (!keys_.empty()) {
            auto key_it = keys_.find(tx.sender);
            if (key_it == keys_.end() || key_it->second != tx.signer_key) {
                out.violations.push_back({"transaction " + std::to_string(i) + ": bad signature"});
                continue;
            }
        }
        TxValidity validity = validate_transaction(out.state, tx);
        if (validity != TxValidity::Ok) {
            out.violations.push_back({"transaction " + std::to_string(i) + ": " +
                                      tx_validity_name(validity)});
            continue;
        }
        Receipt receipt = apply_transaction(out.state, tx, block.miner, block.number, schedule_);
        gas_accounted += std::min(receipt.gas_used, tx.gas_limit);
        out.receipts.push_back(std::move(receipt));
    }
    if (out.violations.empty() && gas_accounted != block.gas_used_total) {
        out.violations.push_back({"gas accounting mismatch: header says " +
                                  std::to_string(block.gas_used_total) + ", replay used " +
                                  std::to_string(gas_accounted)});
    }
    return out;
}

std::vector<Violation> Chain::structural_violations(const Block& block) const
{
    std::vector<Violation> violations;
    auto parent_it = blocks_.find(block.parent_hash);
    if (parent_it == blocks_.end()) {
        violations.push_back({"unknown parent " + block.parent_hash.hex()});
        return violations;
    }
    const Block& parent = parent_it->second.block;
    if (block.number != parent.number + 1) {
        violations.push_back({"block number " + std::to_string(block.number) +
                              " does not follow parent " + std::to_string(parent.number)});
    }
    if (block.timestamp < parent.timestamp) {
        violations.push_back({"timestamp before parent"});
    }
    if (block.block_gas_limit != block_gas_limit_) {
        violations.push_back({"block gas limit changed"});
    }
    if (block.gas_used_total > block.block_gas_limit) {
        violations.push_back({"gas used exceeds block gas limit"});
    }
    if (block.hash != block.compute_hash()) {
        violations.push_back({"hash mismatch"});
    }
    return violations;
}

std::vector<Violation> Chain::validate_block(const Block& block) const
{
    std::vector<Violation> violations = structural_violations(block);
    if (!violations.empty()) return violations;
    if (block.parent_hash == head_hash_) {
        return replay_onto(head_state_, block).violations;
    }
    WorldState parent_state = state_before(block);
    return replay_onto(parent_state, block).violations;
}

AppendResult Chain::append_block(const Block& block)
{
    AppendResult result;
    if (blocks_.find(block.parent_hash) == blocks_.end()) {
        result.ok = false;
        result.error = AppendError::UnknownParent;
        result.violations.push_back({"unknown parent " + block.parent_hash.hex()});
        return result;
    }
    std::vector<Violation> violations = structural_violations(block);
    ReplayOutcome outcome;
    if (violations.empty()) {
        // Validation replays the block from the parent state; the same pass
        // yields the receipts and post-state adopted below.
        if (block.parent_hash == head_hash_) {
            outcome = replay_onto(head_state_, block);
        } else {
            WorldState parent_state = state_before(block);
            outcome = replay_onto(parent_state, block);
        }
        violations = outcome.violations;
    }
    if (!violations.empty()) {
        result.ok = false;
        result.error = AppendError::InvalidBlock;
        result.violations = std::move(violations);
        return result;
    }

    bool extends_head = block.parent_hash == head_hash_;
    Hash32 hash = block.hash;
    blocks_.emplace(hash, StoredBlock{block, std::move(outcome.receipts), next_received_seq_++});

    // Longest branch wins; an equal-length branch never displaces the
    // earlier-received head.
    if (block.number > blocks_.at(head_hash_).block.number) {
        head_hash_ = hash;
        if (extends_head) {
            head_state_ = std::move(outcome.state);
        } else {
            head_state_ = replay_state();
        }
    }
    return result;
}

WorldState Chain::replay_state() const
{
    WorldState state = genesis_state_;
    for (const StoredBlock* stored : branch_to(head_hash_)) {
        if (stored->block.number == 0) continue;
        auto outcome = replay_onto(state, stored->block);
        if (!outcome.violations.empty()) {
            throw std::logic_error("stored canonical block fails replay: " +
                                   outcome.violations.front().what);
        }
        state = std::move(outcome.state);
    }
    return state;
}

void Chain::replay_canonical(
    const std::function<void(const Block&, const std::vector<Receipt>&, const WorldState&)>& visit)
    const
{
    WorldState state = genesis_state_;
    for (const StoredBlock* stored : branch_to(head_hash_)) {
        if (stored->block.number == 0) {
            visit(stored->block, stored->receipts, state);
            continue;
        }
        auto outcome = replay_onto(state, stored->block);
        if (!outcome.violations.empty()) {
            throw std::logic_error("stored canonical block fails replay: " +
                                   outcome.violations.front().what);
        }
        state = std::move(outcome.state);
        visit(stored->block, outcome.receipts, state);
    }
}

std::vector<Hash32> Chain::canonical_hashes() const
{
    std::vector<Hash32> hashes;
    for (const StoredBlock* stored : branch_to(head_hash_)) {
        hashes.push_back(stored->block.hash);
    }
    return hashes;
}

} // namespace agasp
