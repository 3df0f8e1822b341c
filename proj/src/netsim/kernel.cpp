// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/netsim/kernel.hpp"

#include "agasp/keys.hpp"

#include <nlohmann/json.hpp>

#include <stdexcept>

namespace agasp::netsim {

using ordered_json = nlohmann::ordered_json;

Kernel::Kernel(SimConfig config, std::vector<GenesisAccount> extra_accounts, EventLogSink* log)
    : config_(std::move(config)),
      rng_(config_.seed),
      background_(config_.load),
      log_(log)
{
    horizon_ = ticks_from_seconds(config_.horizon_seconds);
    propagation_delay_ = ticks_from_seconds(config_.propagation_delay_seconds);

    WorldState genesis;
    KeyRegistry keys;
    genesis.contract_address = contract_genesis_address();
    genesis.accounts[genesis.contract_address] = Account{0, 0, AccountKind::Contract};

    miner_address_ = address_for_key(kMinerKey);
    genesis.accounts[miner_address_] = Account{};
    keys[miner_address_] = kMinerKey;

    background_accounts_.reserve(config_.load.account_count);
    background_next_nonce_.assign(config_.load.account_count, 0);
    for (std::uint32_t i = 0; i < config_.load.account_count; ++i) {
        std::uint64_t key = kBackgroundKeyBase + i;
        Address addr = address_for_key(key);
        background_accounts_.push_back(addr);
        genesis.accounts[addr] = Account{config_.load.account_funding, 0, AccountKind::User};
        keys[addr] = key;
    }
    for (const GenesisAccount& extra : extra_accounts) {
        Address addr = address_for_key(extra.key);
        genesis.accounts[addr] = Account{extra.balance, 0, AccountKind::User};
        keys[addr] = extra.key;
    }

    keys_ = keys;
    chain_ = std::make_unique<Chain>(config_.block_gas_limit, std::move(genesis),
                                     config_.gas_schedule, std::move(keys));

    if (log_) {
        ordered_json line;
        line["kind"] = "SimStart";
        line["seed"] = config_.seed;
        line["genesis"] = chain_->genesis().hash.hex();
        line["horizon"] = format_seconds(horizon_);
        (*log_) << line.dump() << '\n';
    }

    schedule_next_block();
    schedule_next_background(0);
}

void Kernel::log_event(const SimEvent& event, const std::string& detail_json)
{
    if (!log_) return;
    (*log_) << "{\"time\":\"" << format_seconds(event.time) << "\",\"seq\":" << event.seq
            << ",\"kind\":\"" << event_kind_name(event.payload) << "\"" << detail_json << "}\n";
}

void Kernel::schedule_timer(SimTime at, std::string label, std::function<void()> fn)
{
    queue_.schedule(clock_, at, EvAgentTimer{std::move(label), std::move(fn)});
}

void Kernel::submit_transaction(const Transaction& tx)
{
    submit_transaction(tx, propagation_delay_);
}

void Kernel::submit_transaction(const Transaction& tx, SimTime propagation_delay)
{
    tracked_.emplace(tx.id, TxOutcome{});
    queue_.schedule(clock_, clock_, EvTxSubmitted{tx, propagation_delay, false});
}

void Kernel::watch_confirmation(const Hash32& tx_id, std::uint32_t depth,
                                std::function<void(const ConfirmationEvent&)> callback)
{
    if (depth == 0) depth = 1;
    auto it = tracked_.find(tx_id);
    if (it != tracked_.end()) {
        if (it->second.state == TxOutcome::State::Dropped) {
            ConfirmationEvent ev;
            ev.dropped = true;
            ev.time = clock_;
            ev.drop_reason = it->second.drop_reason;
            callback(ev);
            return;
        }
        if (it->second.state == TxOutcome::State::Included &&
            last_delivered_number_ + 1 >= it->second.block_number + depth) {
            ConfirmationEvent ev;
            ev.block_number = it->second.block_number;
            ev.time = clock_;
            callback(ev);
            return;
        }
    }
    watchers_.push_back(Watcher{tx_id, depth, std::move(callback)});
}

std::uint64_t Kernel::allocate_nonce(const Address& addr)
{
    const Account* acct = chain_->head_state().find(addr);
    std::uint64_t state_next = acct ? acct->nonce : 0;
    std::uint64_t& reserved = agent_next_nonce_[addr];
    std::uint64_t n = reserved > state_next ? reserved : state_next;
    reserved = n + 1;
    return n;
}

const TxOutcome* Kernel::outcome_for(const Hash32& tx_id) const
{
    auto it = tracked_.find(tx_id);
    return it == tracked_.end() ? nullptr : &it->second;
}

const Receipt* Kernel::receipt_for(const Hash32& tx_id) const
{
    auto it = tracked_.find(tx_id);
    if (it == tracked_.end() || it->second.state != TxOutcome::State::Included) return nullptr;
    const Block* block = chain_->block_by_number(it->second.block_number);
    if (!block) return nullptr;
    const std::vector<Receipt>* receipts = chain_->receipts_for(block->hash);
    if (!receipts) return nullptr;
    for (const Receipt& receipt : *receipts) {
        if (receipt.tx_id == tx_id) return &receipt;
    }
    return nullptr;
}

void Kernel::run()
{
    run_until(horizon_);
}

void Kernel::run_until(SimTime t)
{
    while (!queue_.empty() && queue_.peek().time <= t) {
        SimEvent event = queue_.pop();
        process(event);
    }
    if (clock_ < t) clock_ = t;
}

void Kernel::process(const SimEvent& event)
{
    clock_ = event.time;
    if (const auto* submitted = std::get_if<EvTxSubmitted>(&event.payload)) {
        on_tx_submitted(event, *submitted);
    } else if (const auto* arrived = std::get_if<EvTxArrivedAtPool>(&event.payload)) {
        on_tx_arrived(event, *arrived);
    } else if (std::get_if<EvBlockMined>(&event.payload)) {
        on_block_mined(event);
    } else if (const auto* delivered = std::get_if<EvBlockDelivered>(&event.payload)) {
        on_block_delivered(event, *delivered);
    } else if (const auto* timer = std::get_if<EvAgentTimer>(&event.payload)) {
        if (log_) {
            log_event(event, ",\"label\":\"" + timer->label + "\"");
        }
        if (timer->fn) timer->fn();
    }
}

void Kernel::on_tx_submitted(const SimEvent& event, const EvTxSubmitted& ev)
{
    if (log_) {
        log_event(event, ",\"tx\":\"" + ev.tx.id.hex() + "\",\"sender\":\"" + ev.tx.sender.hex() +
                             "\",\"nonce\":" + std::to_string(ev.tx.nonce) + ",\"gas_price\":\"" +
                             wei_to_string(ev.tx.gas_price) + "\",\"background\":" +
                             (ev.background ? "true" : "false"));
    }
    queue_.schedule(clock_, clock_ + ev.propagation_delay,
                    EvTxArrivedAtPool{ev.tx, ev.background});
    if (ev.background) {
        schedule_next_background(clock_);
    }
}

void Kernel::on_tx_arrived(const SimEvent& event, const EvTxArrivedAtPool& ev)
{
    std::string reason;
    bool accepted = false;

    // Signature surrogate check: the transaction must have been built with
    // the key handle registered for its sender.
    auto key_it = keys_.find(ev.tx.sender);
    if (key_it == keys_.end() || key_it->second != ev.tx.signer_key) {
        reason = "BadSignature";
    } else {
        Mempool::AddResult result = pool_.add(ev.tx, chain_->head_state(), &reason);
        accepted = result == Mempool::AddResult::Accepted;
        if (result == Mempool::AddResult::Duplicate) {
            // Second copy ignored; the original entry stands.
            log_event(event, ",\"tx\":\"" + ev.tx.id.hex() + "\",\"accepted\":false,\"reason\":\"Duplicate\"");
            return;
        }
    }

    if (log_) {
        log_event(event, ",\"tx\":\"" + ev.tx.id.hex() + "\",\"accepted\":" +
                             (accepted ? "true" : "false") +
                             (accepted ? std::string() : ",\"reason\":\"" + reason + "\""));
    }

    if (!accepted) {
        auto tracked_it = tracked_.find(ev.tx.id);
        if (tracked_it != tracked_.end() &&
            tracked_it->second.state == TxOutcome::State::Pending) {
            tracked_it->second.state = TxOutcome::State::Dropped;
            tracked_it->second.drop_reason = reason;
            fire_drop_watchers(ev.tx.id, reason);
        }
    }
}

void Kernel::on_block_mined(const SimEvent& event)
{
    std::vector<Transaction> selected =
        pool_.select_transactions(chain_->head_state(), config_.block_gas_limit,
                                  config_.gas_schedule);

    Block block;
    block.number = chain_->head_number() + 1;
    block.parent_hash = chain_->head().hash;
    block.timestamp = clock_;
    block.transactions = selected;
    block.block_gas_limit = config_.block_gas_limit;
    block.miner = miner_address_;
    std::uint64_t gas_total = 0;
    for (const Transaction& tx : selected) {
        std::uint64_t used = config_.gas_schedule.gas_for(tx);
        gas_total += used < tx.gas_limit ? used : tx.gas_limit;
    }
    block.gas_used_total = gas_total;
    block.hash = block.compute_hash();

    AppendResult result = chain_->append_block(block);
    if (!result.ok) {
        throw std::logic_error("mined block rejected: " + result.violations.front().what);
    }

    pool_.remove_included(selected);
    std::vector<Mempool::Drop> drops = pool_.revalidate(chain_->head_state());

    for (const Transaction& tx : selected) {
        ++included_tx_count_;
        auto it = tracked_.find(tx.id);
        if (it != tracked_.end()) {
            it->second.state = TxOutcome::State::Included;
            it->second.block_number = block.number;
            it->second.inclusion_time = block.timestamp;
        }
    }
    for (const Mempool::Drop& drop : drops) {
        auto it = tracked_.find(drop.id);
        if (it != tracked_.end() && it->second.state == TxOutcome::State::Pending) {
            it->second.state = TxOutcome::State::Dropped;
            it->second.drop_reason = drop.reason;
            fire_drop_watchers(drop.id, drop.reason);
        }
    }

    mined_blocks_.push_back(
        MinedBlockStat{clock_, static_cast<std::uint32_t>(selected.size()), gas_total});

    if (log_) {
        std::string detail = ",\"number\":" + std::to_string(block.number) + ",\"hash\":\"" +
                             block.hash.hex() + "\",\"tx_count\":" +
                             std::to_string(selected.size()) + ",\"gas_used\":" +
                             std::to_string(gas_total) + ",\"dropped\":[";
        for (std::size_t i = 0; i < drops.size(); ++i) {
            if (i) detail += ',';
            detail += "{\"tx\":\"" + drops[i].id.hex() + "\",\"reason\":\"" + drops[i].reason +
                      "\"}";
        }
        detail += "]";
        log_event(event, detail);
    }

    queue_.schedule(clock_, clock_ + propagation_delay_,
                    EvBlockDelivered{block.hash, block.number});
    schedule_next_block();
}

void Kernel::on_block_delivered(const SimEvent& event, const EvBlockDelivered& ev)
{
    if (log_) {
        log_event(event, ",\"number\":" + std::to_string(ev.number) + ",\"hash\":\"" +
                             ev.block_hash.hex() + "\"");
    }
    last_delivered_number_ = ev.number;
    check_watchers(ev.number, clock_);
}

void Kernel::schedule_next_block()
{
    double gap = rng_.exponential(config_.mean_block_interval_seconds);
    queue_.schedule(clock_, clock_ + ticks_from_seconds(gap), EvBlockMined{});
}

void Kernel::schedule_next_background(SimTime from)
{
    if (background_accounts_.empty()) return;
    std::optional<SimTime> at = background_.next_arrival(from, rng_);
    if (!at || *at > horizon_) return;

    std::uint32_t idx = static_cast<std::uint32_t>(background_round_robin_++ %
                                                   background_accounts_.size());
    Wei price = background_.sample_gas_price(*at, rng_);
    const Address& sender = background_accounts_[idx];
    const Address& recipient = background_accounts_[(idx + 1) % background_accounts_.size()];
    Transaction tx = make_transaction(sender, background_next_nonce_[idx]++, recipient,
                                      config_.load.tx_value, price, config_.load.gas_limit_per_tx,
                                      std::nullopt, *at, kBackgroundKeyBase + idx);
    queue_.schedule(clock_, *at, EvTxSubmitted{std::move(tx), propagation_delay_, true});
}

void Kernel::check_watchers(std::uint64_t delivered_number, SimTime delivery_time)
{
    for (std::size_t i = 0; i < watchers_.size();) {
        Watcher& watcher = watchers_[i];
        auto it = tracked_.find(watcher.tx_id);
        bool fired = false;
        if (it != tracked_.end() && it->second.state == TxOutcome::State::Included &&
            delivered_number + 1 >= it->second.block_number + watcher.depth) {
            ConfirmationEvent ev;
            ev.block_number = it->second.block_number;
            ev.time = delivery_time;
            auto callback = std::move(watcher.callback);
            watchers_.erase(watchers_.begin() + static_cast<std::ptrdiff_t>(i));
            callback(ev);
            fired = true;
        }
        if (!fired) ++i;
    }
}

void Kernel::fire_drop_watchers(const Hash32& tx_id, const std::string& reason)
{
    for (std::size_t i = 0; i < watchers_.size();) {
        if (watchers_[i].tx_id == tx_id) {
            ConfirmationEvent ev;
            ev.dropped = true;
            ev.time = clock_;
            ev.drop_reason = reason;
            auto callback = std::move(watchers_[i].callback);
            watchers_.erase(watchers_.begin() + static_cast<std::ptrdiff_t>(i));
            callback(ev);
        } else {
            ++i;
        }
    }
}

} // namespace agasp::netsim
