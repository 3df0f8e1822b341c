// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/chain.hpp"
#include "agasp/netsim/event_queue.hpp"
#include "agasp/netsim/load_model.hpp"
#include "agasp/netsim/mempool.hpp"
#include "agasp/netsim/rng.hpp"

#include <functional>
#include <map>
#include <memory>
#include <ostream>
#include <string>
#include <vector>

namespace agasp::netsim {

struct SimConfig {
    std::uint64_t seed = 1;
    double mean_block_interval_seconds = 15.0;
    std::uint64_t block_gas_limit = 8'000'000;
    double propagation_delay_seconds = 0.5;
    std::uint32_t confirmation_depth = 1;
    double horizon_seconds = 3'600.0;
    GasSchedule gas_schedule;
    LoadModel load;
};

// Extra genesis account beyond the background pool (agents, probes, users).
struct GenesisAccount {
    std::uint64_t key = 0;
    Wei balance = 0;
};

// JSON-lines sink for the structured event log; null disables logging.
using EventLogSink = std::ostream;

// Terminal knowledge about a tracked transaction.
struct TxOutcome {
    enum class State : std::uint8_t { Pending, Included, Dropped };
    State state = State::Pending;
    std::uint64_t block_number = 0;
    SimTime inclusion_time = 0; // timestamp of the including block
    std::string drop_reason;
};

struct ConfirmationEvent {
    bool dropped = false;
    std::uint64_t block_number = 0; // inclusion block
    SimTime time = 0;               // delivery time of the confirming block
    std::string drop_reason;
};

struct MinedBlockStat {
    SimTime time = 0;
    std::uint32_t tx_count = 0;
    std::uint64_t gas_used = 0;
};

// Discrete-event kernel: clock, mempool with gasPrice-priority mining,
// stochastic block production, propagation delays, and background load.
// Strictly single-threaded; one instance per simulation run.
class Kernel {
public:
    Kernel(SimConfig config, std::vector<GenesisAccount> extra_accounts,
           EventLogSink* log = nullptr);

    SimTime now() const { return clock_; }
    const SimConfig& config() const { return config_; }
    const Chain& chain() const { return *chain_; }
    const WorldState& state() const { return chain_->head_state(); }
    const Mempool& pool() const { return pool_; }
    Rng& rng() { return rng_; }
    // Public key directory: which handle signs for which account.
    const KeyRegistry& keys() const { return keys_; }
    const Address& miner_address() const { return miner_address_; }

    // Agent surface ---------------------------------------------------

    void schedule_timer(SimTime at, std::string label, std::function<void()> fn);

    // Submits now; the transaction reaches the pool after the propagation
    // delay and is validated on arrival (invalid ones are dropped with a
    // logged reason). Tracked transactions keep an outcome record.
    void submit_transaction(const Transaction& tx);
    void submit_transaction(const Transaction& tx, SimTime propagation_delay);

    // Fires once the transaction's block has depth-1 descendants delivered
    // on the canonical branch, or immediately when it is dropped.
    void watch_confirmation(const Hash32& tx_id, std::uint32_t depth,
                            std::function<void(const ConfirmationEvent&)> callback);

    // Next unused nonce for an agent account, counting transactions already
    // submitted this run. A dropped transaction burns its nonce.
    std::uint64_t allocate_nonce(const Address& addr);

    const TxOutcome* outcome_for(const Hash32& tx_id) const;
    const Receipt* receipt_for(const Hash32& tx_id) const;

    // Run -------------------------------------------------------------

    void run();                 // process events up to the horizon
    void run_until(SimTime t);  // process events with time <= t

    // Stats -------------------------------------------------------------

    std::uint64_t included_tx_count() const { return included_tx_count_; }
    const std::vector<MinedBlockStat>& mined_blocks() const { return mined_blocks_; }

private:
    void log_event(const SimEvent& event, const std::string& detail_json);
    void process(const SimEvent& event);
    void on_tx_submitted(const SimEvent& event, const EvTxSubmitted& ev);
    void on_tx_arrived(const SimEvent& event, const EvTxArrivedAtPool& ev);
    void on_block_mined(const SimEvent& event);
    void on_block_delivered(const SimEvent& event, const EvBlockDelivered& ev);
    void schedule_next_block();
    void schedule_next_background(SimTime from);
    void check_watchers(std::uint64_t delivered_number, SimTime delivery_time);
    void fire_drop_watchers(const Hash32& tx_id, const std::string& reason);

    SimConfig config_;
    Rng rng_;
    EventQueue queue_;
    SimTime clock_ = 0;
    std::unique_ptr<Chain> chain_;
    Mempool pool_;
    BackgroundSampler background_;
    std::vector<Address> background_accounts_;
    std::vector<std::uint64_t> background_next_nonce_;
    std::uint64_t background_round_robin_ = 0;
    Address miner_address_;
    KeyRegistry keys_;
    SimTime horizon_ = 0;
    SimTime propagation_delay_ = 0;
    std::uint64_t last_delivered_number_ = 0;

    std::map<Hash32, TxOutcome> tracked_;
    std::map<Address, std::uint64_t> agent_next_nonce_;
    struct Watcher {
        Hash32 tx_id;
        std::uint32_t depth = 1;
        std::function<void(const ConfirmationEvent&)> callback;
    };
    std::vector<Watcher> watchers_;
    std::map<Hash32, std::uint64_t> inclusion_block_; // tracked txs only

    std::uint64_t included_tx_count_ = 0;
    std::vector<MinedBlockStat> mined_blocks_;
    EventLogSink* log_ = nullptr;
};

// Background pool key handles occupy a reserved range.
constexpr std::uint64_t kBackgroundKeyBase = 0x4241434b'00000000ull; // "BACK"
constexpr std::uint64_t kMinerKey = 0x4d494e45'52000000ull;          // "MINER"

} // namespace agasp::netsim
