// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/netsim/mempool.hpp"

#include <algorithm>
#include <queue>

namespace agasp::netsim {

Mempool::AddResult Mempool::add(const Transaction& tx, const WorldState& state,
                                std::string* reject_reason)
{
    auto set_reason = [&](const char* r) {
        if (reject_reason) *reject_reason = r;
    };

    if (ids_.count(tx.id) != 0) {
        set_reason("Duplicate");
        return AddResult::Duplicate;
    }
    const Account* sender = state.find(tx.sender);
    if (!sender) {
        set_reason("UnknownSender");
        return AddResult::Invalid;
    }
    if (tx.nonce < sender->nonce) {
        set_reason("BadNonce");
        return AddResult::Invalid;
    }
    if (sender->balance < tx.max_cost()) {
        set_reason("InsufficientFunds");
        return AddResult::Invalid;
    }
    auto& queue = by_sender_[tx.sender];
    if (queue.count(tx.nonce) != 0) {
        set_reason("NonceOccupied");
        return AddResult::Invalid;
    }
    queue.emplace(tx.nonce, Entry{tx, next_arrival_seq_++});
    ids_.insert(tx.id);
    return AddResult::Accepted;
}

namespace {

struct Candidate {
    Wei gas_price;
    std::uint64_t arrival_seq;
    std::uint64_t nonce;
    const Transaction* tx;

    // Highest price first; earlier arrival, then lower nonce break ties.
    bool operator<(const Candidate& other) const
    {
        if (gas_price != other.gas_price) return gas_price < other.gas_price;
        if (arrival_seq != other.arrival_seq) return arrival_seq > other.arrival_seq;
        return nonce > other.nonce;
    }
};

} // namespace

std::vector<Transaction> Mempool::select_transactions(const WorldState& state,
                                                      std::uint64_t block_gas_limit,
                                                      const GasSchedule& schedule) const
{
    struct SenderView {
        std::map<std::uint64_t, Entry>::const_iterator cur;
        std::map<std::uint64_t, Entry>::const_iterator end;
        Wei balance = 0;
        std::uint64_t next_nonce = 0;
    };

    std::map<Address, SenderView> views;
    std::priority_queue<Candidate> ready;

    auto push_head = [&](const Address& sender, SenderView& view) {
        // Skip stale nonces, then offer the head only if it continues the
        // sender's sequence.
        while (view.cur != view.end && view.cur->first < view.next_nonce) ++view.cur;
        if (view.cur == view.end || view.cur->first != view.next_nonce) return;
        const Entry& entry = view.cur->second;
        ready.push(Candidate{entry.tx.gas_price, entry.arrival_seq, entry.tx.nonce, &entry.tx});
        (void)sender;
    };

    for (const auto& [sender, queue] : by_sender_) {
        if (queue.empty()) continue;
        const Account* acct = state.find(sender);
        if (!acct) continue;
        SenderView view{queue.begin(), queue.end(), acct->balance, acct->nonce};
        auto [it, inserted] = views.emplace(sender, view);
        push_head(sender, it->second);
    }

    std::vector<Transaction> selected;
    std::uint64_t gas_reserved = 0;
    while (!ready.empty()) {
        Candidate cand = ready.top();
        ready.pop();
        const Transaction& tx = *cand.tx;
        SenderView& view = views.at(tx.sender);

        // A head that does not fit blocks its whole sender: later nonces
        // cannot jump the sequence.
        if (gas_reserved + tx.gas_limit > block_gas_limit) continue;
        if (view.balance < tx.max_cost()) continue;

        selected.push_back(tx);
        gas_reserved += tx.gas_limit;
        // Reserve the worst-case debit; a revert refunds the value, so the
        // real balance can only be higher than this running view.
        Wei fee = compute_fee(tx.gas_price, schedule.gas_for(tx), tx.gas_limit);
        view.balance -= tx.value + fee;
        view.next_nonce = tx.nonce + 1;
        ++view.cur;
        push_head(tx.sender, view);
    }
    return selected;
}

void Mempool::remove_included(const std::vector<Transaction>& included)
{
    for (const Transaction& tx : included) {
        auto sender_it = by_sender_.find(tx.sender);
        if (sender_it == by_sender_.end()) continue;
        auto entry_it = sender_it->second.find(tx.nonce);
        if (entry_it == sender_it->second.end() || entry_it->second.tx.id != tx.id) continue;
        ids_.erase(tx.id);
        sender_it->second.erase(entry_it);
        if (sender_it->second.empty()) by_sender_.erase(sender_it);
    }
}

std::vector<Mempool::Drop> Mempool::revalidate(const WorldState& state)
{
    std::vector<Drop> dropped;
    for (auto sender_it = by_sender_.begin(); sender_it != by_sender_.end();) {
        const Account* acct = state.find(sender_it->first);
        auto& queue = sender_it->second;
        for (auto it = queue.begin(); it != queue.end();) {
            const Transaction& tx = it->second.tx;
            const char* reason = nullptr;
            if (!acct) {
                reason = "UnknownSender";
            } else if (tx.nonce < acct->nonce) {
                reason = "BadNonce";
            } else if (acct->balance < tx.max_cost()) {
                reason = "InsufficientFunds";
            }
            if (reason) {
                dropped.push_back({tx.id, reason});
                ids_.erase(tx.id);
                it = queue.erase(it);
            } else {
                ++it;
            }
        }
        sender_it = queue.empty() ? by_sender_.erase(sender_it) : std::next(sender_it);
    }
    return dropped;
}

std::vector<const Transaction*> Mempool::pending() const
{
    std::vector<const Transaction*> out;
    out.reserve(ids_.size());
    for (const auto& [sender, queue] : by_sender_) {
        for (const auto& [nonce, entry] : queue) {
            out.push_back(&entry.tx);
        }
    }
    return out;
}

} // namespace agasp::netsim
