// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agasp/keys.hpp"
#include "agasp/netsim/kernel.hpp"

#include <random>
#include <sstream>

using namespace agasp;
using namespace agasp::netsim;

namespace {

constexpr std::uint64_t kAgentKey = 0xa0a0'0001;

Address agent_address()
{
    return address_for_key(kAgentKey);
}

SimConfig quiet_config(double horizon = 600.0)
{
    SimConfig cfg;
    cfg.seed = 11;
    cfg.horizon_seconds = horizon;
    cfg.load.arrival_rate_per_second = 0.0;
    cfg.load.account_count = 0;
    return cfg;
}

Transaction agent_tx(const Kernel& kernel, std::uint64_t nonce, Wei value, Wei gas_price,
                     SimTime submit_time, std::uint64_t key = kAgentKey)
{
    return make_transaction(address_for_key(kAgentKey), nonce, kernel.miner_address(), value,
                            gas_price, 21'000, std::nullopt, submit_time, key);
}

} // namespace

TEST_CASE("event queue: time order with seq tie-break")
{
    EventQueue q;
    q.schedule(0, 10 * kTicksPerSecond, EvBlockMined{});
    q.schedule(0, 5 * kTicksPerSecond, EvAgentTimer{"a", {}});
    q.schedule(0, 5 * kTicksPerSecond, EvAgentTimer{"b", {}});
    auto first = q.pop();
    CHECK(std::get<EvAgentTimer>(first.payload).label == "a");
    auto second = q.pop();
    CHECK(std::get<EvAgentTimer>(second.payload).label == "b"); // same time, later seq
    auto third = q.pop();
    CHECK(std::get_if<EvBlockMined>(&third.payload) != nullptr);
}

TEST_CASE("event queue: scheduling in the past throws")
{
    EventQueue q;
    q.schedule(10 * kTicksPerSecond, 10 * kTicksPerSecond, EvBlockMined{}); // now is fine
    CHECK_THROWS_AS(q.schedule(10 * kTicksPerSecond, 9 * kTicksPerSecond, EvBlockMined{}),
                    TimeInPastError);
}

TEST_CASE("kernel: timers at equal times run in schedule order")
{
    Kernel kernel(quiet_config(), {});
    std::string order;
    kernel.schedule_timer(kTicksPerSecond, "x", [&] { order += 'x'; });
    kernel.schedule_timer(kTicksPerSecond, "y", [&] { order += 'y'; });
    kernel.run_until(2 * kTicksPerSecond);
    CHECK(order == "xy");
}

TEST_CASE("kernel: transaction reaches the pool after the propagation delay")
{
    SimConfig cfg = quiet_config();
    cfg.propagation_delay_seconds = 0.5;
    Kernel kernel(cfg, {GenesisAccount{kAgentKey, ether(1)}});
    Transaction tx = agent_tx(kernel, 0, 1'000, gwei(10), kTicksPerSecond);
    kernel.schedule_timer(kTicksPerSecond, "submit", [&] { kernel.submit_transaction(tx); });

    kernel.run_until(kTicksPerSecond + 400'000);
    CHECK_FALSE(kernel.pool().contains(tx.id));
    kernel.run_until(kTicksPerSecond + 500'000);
    CHECK(kernel.pool().contains(tx.id));

    SUBCASE("duplicate submission is ignored")
    {
        kernel.schedule_timer(kernel.now(), "dup", [&] { kernel.submit_transaction(tx); });
        kernel.run_until(kernel.now() + 2 * kTicksPerSecond);
        CHECK(kernel.pool().size() == 1);
    }
}

TEST_CASE("kernel: invalid transactions are dropped with a reason")
{
    SimConfig cfg = quiet_config();
    Kernel kernel(cfg, {GenesisAccount{kAgentKey, 1'000}}); // cannot cover max fee

    SUBCASE("underfunded")
    {
        Transaction tx = agent_tx(kernel, 0, 0, gwei(10), 0);
        bool dropped = false;
        std::string reason;
        kernel.submit_transaction(tx);
        kernel.watch_confirmation(tx.id, 1, [&](const ConfirmationEvent& ev) {
            dropped = ev.dropped;
            reason = ev.drop_reason;
        });
        kernel.run_until(5 * kTicksPerSecond);
        CHECK(dropped);
        CHECK(reason == "InsufficientFunds");
        CHECK(kernel.pool().size() == 0);
        CHECK(kernel.outcome_for(tx.id)->state == TxOutcome::State::Dropped);
    }
    SUBCASE("wrong key handle")
    {
        Transaction tx = agent_tx(kernel, 0, 0, 1, 0, kAgentKey + 1);
        kernel.submit_transaction(tx);
        kernel.run_until(5 * kTicksPerSecond);
        CHECK(kernel.outcome_for(tx.id)->state == TxOutcome::State::Dropped);
        CHECK(kernel.outcome_for(tx.id)->drop_reason == "BadSignature");
    }
}

namespace {

struct PoolFixture {
    WorldState state;
    GasSchedule schedule;
    Mempool pool;
    std::vector<Address> senders;
    std::vector<std::uint64_t> keys;

    PoolFixture(int sender_count, Wei funding = ether(100))
    {
        state.contract_address = contract_genesis_address();
        state.accounts[state.contract_address] = Account{0, 0, AccountKind::Contract};
        for (int i = 0; i < sender_count; ++i) {
            std::uint64_t key = 0xbb00 + static_cast<std::uint64_t>(i);
            keys.push_back(key);
            senders.push_back(address_for_key(key));
            state.accounts[senders.back()] = Account{funding, 0, AccountKind::User};
        }
    }

    Transaction add(int sender_idx, std::uint64_t nonce, Wei gas_price,
                    std::uint64_t gas_limit = 21'000, Wei value = 0)
    {
        Transaction tx = make_transaction(senders[sender_idx], nonce, senders[0], value,
                                          gas_price, gas_limit, std::nullopt, 0,
                                          keys[sender_idx]);
        std::string reason;
        REQUIRE(pool.add(tx, state, &reason) == Mempool::AddResult::Accepted);
        return tx;
    }
};

} // namespace

TEST_CASE("mempool: selection is descending gasPrice")
{
    PoolFixture fx(2);
    Transaction b = fx.add(1, 0, gwei(10));
    Transaction a = fx.add(0, 0, gwei(20));
    auto selected = fx.pool.select_transactions(fx.state, 8'000'000, fx.schedule);
    REQUIRE(selected.size() == 2);
    CHECK(selected[0].id == a.id);
    CHECK(selected[1].id == b.id);
}

TEST_CASE("mempool: block capacity reserves by gasLimit")
{
    PoolFixture fx(3);
    fx.add(0, 0, gwei(30), 70'000);
    fx.add(1, 0, gwei(20), 70'000);
    fx.add(2, 0, gwei(10), 70'000);
    auto selected = fx.pool.select_transactions(fx.state, 70'000, fx.schedule);
    REQUIRE(selected.size() == 1);
    CHECK(selected[0].gas_price == gwei(30));
}

TEST_CASE("mempool: nonce continuity beats price")
{
    PoolFixture fx(2);
    fx.state.accounts[fx.senders[0]].nonce = 5;
    Transaction n5 = fx.add(0, 5, gwei(5));
    Transaction n6 = fx.add(0, 6, gwei(50));
    Transaction other = fx.add(1, 0, gwei(10));
    auto selected = fx.pool.select_transactions(fx.state, 8'000'000, fx.schedule);
    REQUIRE(selected.size() == 3);
    // Highest eligible head first, but nonce 5 always precedes nonce 6.
    CHECK(selected[0].id == other.id);
    CHECK(selected[1].id == n5.id);
    CHECK(selected[2].id == n6.id);

    SUBCASE("a nonce gap blocks the whole sender")
    {
        PoolFixture gap(2);
        gap.add(0, 1, gwei(50)); // nonce 0 missing
        Transaction ok = gap.add(1, 0, gwei(1));
        auto chosen = gap.pool.select_transactions(gap.state, 8'000'000, gap.schedule);
        REQUIRE(chosen.size() == 1);
        CHECK(chosen[0].id == ok.id);
    }
}

TEST_CASE("mempool: ties broken by earlier arrival")
{
    PoolFixture fx(2);
    Transaction first = fx.add(0, 0, gwei(10));
    Transaction second = fx.add(1, 0, gwei(10));
    auto selected = fx.pool.select_transactions(fx.state, 8'000'000, fx.schedule);
    REQUIRE(selected.size() == 2);
    CHECK(selected[0].id == first.id);
    CHECK(selected[1].id == second.id);
}

TEST_CASE("mempool: joint balance across one sender's picks")
{
    // Two transfers individually coverable but not jointly: only the first
    // is selected, so the assembled block always applies.
    PoolFixture fx(1, /*funding=*/ether(1));
    Wei fee_reserve = gwei(10) * 21'000;
    fx.add(0, 0, gwei(10), 21'000, ether(1) - fee_reserve);
    fx.add(0, 1, gwei(10), 21'000, ether(1) - fee_reserve);
    auto selected = fx.pool.select_transactions(fx.state, 8'000'000, fx.schedule);
    CHECK(selected.size() == 1);
}

TEST_CASE("mempool: priority fairness under random pools")
{
    std::mt19937_64 rng(3);
    for (int round = 0; round < 50; ++round) {
        PoolFixture fx(12);
        std::vector<Transaction> all;
        for (int i = 0; i < 40; ++i) {
            int sender = static_cast<int>(rng() % fx.senders.size());
            std::uint64_t next = 0;
            for (const Transaction& t : all) {
                if (t.sender == fx.senders[sender]) ++next;
            }
            all.push_back(fx.add(sender, next, 1 + rng() % gwei(50)));
        }
        std::uint64_t block_gas = 21'000 * (1 + rng() % 20);
        auto selected = fx.pool.select_transactions(fx.state, block_gas, fx.schedule);

        std::uint64_t used = 0;
        Wei min_included = ~Wei(0);
        std::set<Hash32> picked;
        for (const Transaction& t : selected) {
            used += t.gas_limit;
            picked.insert(t.id);
            if (t.gas_price < min_included) min_included = t.gas_price;
        }
        REQUIRE(used <= block_gas);

        for (const Transaction& t : all) {
            if (picked.count(t.id)) continue;
            // continuity: all lower nonces of this sender were included
            bool continuous = true;
            for (const Transaction& u : all) {
                if (u.sender == t.sender && u.nonce < t.nonce && !picked.count(u.id)) {
                    continuous = false;
                }
            }
            bool would_fit = used + t.gas_limit <= block_gas;
            if (continuous && would_fit && !selected.empty()) {
                CHECK(t.gas_price <= min_included);
            }
        }
    }
}

TEST_CASE("mempool: revalidation drops entries invalidated by state changes")
{
    PoolFixture fx(2);
    Transaction tx = fx.add(0, 0, gwei(10));
    fx.add(1, 0, gwei(10));
    fx.state.accounts[fx.senders[0]].nonce = 1; // spent meanwhile
    auto drops = fx.pool.revalidate(fx.state);
    REQUIRE(drops.size() == 1);
    CHECK(drops[0].id == tx.id);
    CHECK(drops[0].reason == "BadNonce");
    CHECK(fx.pool.size() == 1);
}

TEST_CASE("kernel: block count over an hour is within 3 sigma of Poisson")
{
    SimConfig cfg = quiet_config(3'600.0);
    Kernel kernel(cfg, {});
    kernel.run();
    auto blocks = kernel.mined_blocks().size();
    CHECK(blocks >= 192); // 240 +/- 20%
    CHECK(blocks <= 288);
}

TEST_CASE("kernel: empty pool still produces empty blocks")
{
    Kernel kernel(quiet_config(120.0), {});
    kernel.run();
    REQUIRE_FALSE(kernel.mined_blocks().empty());
    for (const auto& b : kernel.mined_blocks()) CHECK(b.tx_count == 0);
    CHECK(kernel.chain().head_number() == kernel.mined_blocks().size());
}

TEST_CASE("kernel: a transaction outpricing all background lands in the next block")
{
    SimConfig cfg = quiet_config(600.0);
    cfg.load.arrival_rate_per_second = 8.0;
    cfg.load.account_count = 1'024;
    cfg.load.gas_price_median = gwei(10);
    Kernel kernel(cfg, {GenesisAccount{kAgentKey, ether(10)}});

    SimTime submit_at = 100 * kTicksPerSecond;
    Transaction probe = agent_tx(kernel, 0, 0, gwei(1'000), submit_at);
    kernel.schedule_timer(submit_at, "probe", [&] { kernel.submit_transaction(probe); });
    kernel.run();

    const TxOutcome* outcome = kernel.outcome_for(probe.id);
    REQUIRE(outcome != nullptr);
    REQUIRE(outcome->state == TxOutcome::State::Included);
    // Oracle: the first block mined after the probe reached the pool.
    SimTime arrival = submit_at + ticks_from_seconds(cfg.propagation_delay_seconds);
    SimTime first_block_after = 0;
    for (const auto& b : kernel.mined_blocks()) {
        if (b.time > arrival) {
            first_block_after = b.time;
            break;
        }
    }
    CHECK(outcome->inclusion_time == first_block_after);
}

TEST_CASE("kernel: confirmation depth")
{
    Kernel kernel(quiet_config(600.0), {GenesisAccount{kAgentKey, ether(1)}});
    Transaction tx = agent_tx(kernel, 0, 1, gwei(10), 0);
    kernel.submit_transaction(tx);

    struct Fired {
        bool fired = false;
        SimTime at = 0;
        std::uint64_t inclusion = 0;
    };
    Fired d1;
    Fired d3;
    kernel.watch_confirmation(tx.id, 1, [&](const ConfirmationEvent& ev) {
        d1 = {true, ev.time, ev.block_number};
    });
    kernel.watch_confirmation(tx.id, 3, [&](const ConfirmationEvent& ev) {
        d3 = {true, ev.time, ev.block_number};
    });
    kernel.run();

    REQUIRE(d1.fired);
    REQUIRE(d3.fired);
    CHECK(d1.inclusion == d3.inclusion);
    // depth 1 fires at delivery of the inclusion block, depth 3 two blocks later
    const Block* inclusion_block = kernel.chain().block_by_number(d1.inclusion);
    const Block* confirm_block = kernel.chain().block_by_number(d1.inclusion + 2);
    REQUIRE(inclusion_block != nullptr);
    REQUIRE(confirm_block != nullptr);
    SimTime delay = ticks_from_seconds(kernel.config().propagation_delay_seconds);
    CHECK(d1.at == inclusion_block->timestamp + delay);
    CHECK(d3.at == confirm_block->timestamp + delay);
}

TEST_CASE("background load: zero rate produces no transactions")
{
    SimConfig cfg = quiet_config(300.0);
    cfg.load.arrival_rate_per_second = 0.0;
    cfg.load.account_count = 64;
    Kernel kernel(cfg, {});
    kernel.run();
    CHECK(kernel.included_tx_count() == 0);
    CHECK(kernel.pool().size() == 0);
}

TEST_CASE("background load: arrival count within 3 sigma of rate * horizon")
{
    SimConfig cfg = quiet_config(2'000.0);
    cfg.load.arrival_rate_per_second = 5.0;
    cfg.load.account_count = 4'096;
    Kernel kernel(cfg, {});
    kernel.run();
    // All arrivals either got included or still sit in the pool.
    double n = static_cast<double>(kernel.included_tx_count() + kernel.pool().size());
    double expected = 5.0 * 2'000.0;
    double sigma = std::sqrt(expected);
    CHECK(n > expected - 3 * sigma - 10);
    CHECK(n < expected + 3 * sigma + 10);
}

TEST_CASE("background load: doubling the median doubles every sampled price")
{
    LoadModel base;
    base.arrival_rate_per_second = 1.0;
    base.gas_price_median = gwei(10);
    LoadModel doubled = base;
    doubled.gas_price_median = gwei(20);

    BackgroundSampler s1(base);
    BackgroundSampler s2(doubled);
    Rng r1(5);
    Rng r2(5);
    for (int i = 0; i < 1'000; ++i) {
        Wei p1 = s1.sample_gas_price(0, r1);
        Wei p2 = s2.sample_gas_price(0, r2);
        // identical draws, doubled median: allow 1 wei of cast rounding
        Wei lo = p1 * 2 > 1 ? p1 * 2 - 1 : 0;
        CHECK(p2 >= lo);
        CHECK(p2 <= p1 * 2 + 1);
    }
}

TEST_CASE("background load: phase multipliers shape the arrival rate")
{
    LoadModel model;
    model.arrival_rate_per_second = 10.0;
    model.phases = {LoadPhase{100.0, 1.0, 1.0}, LoadPhase{100.0, 0.0, 1.0}};
    BackgroundSampler sampler(model);
    Rng rng(9);
    int in_active = 0;
    int total = 0;
    SimTime t = 0;
    while (true) {
        auto next = sampler.next_arrival(t, rng);
        REQUIRE(next.has_value());
        t = *next;
        if (t > 2'000 * kTicksPerSecond) break;
        ++total;
        double offset = std::fmod(seconds_from_ticks(t), 200.0);
        if (offset < 100.0) ++in_active;
    }
    CHECK(total > 0);
    CHECK(in_active == total); // zero-rate phase gets no arrivals
}

TEST_CASE("kernel: throughput never exceeds the per-block packing bound")
{
    SimConfig cfg = quiet_config(1'200.0);
    cfg.load.arrival_rate_per_second = 50.0; // well beyond capacity
    cfg.load.account_count = 2'048;
    Kernel kernel(cfg, {});
    kernel.run();
    std::uint64_t per_block_cap = cfg.block_gas_limit / cfg.load.gas_limit_per_tx;
    for (const auto& b : kernel.mined_blocks()) {
        CHECK(b.tx_count <= per_block_cap);
        CHECK(b.gas_used <= cfg.block_gas_limit);
    }
}

TEST_CASE("kernel: identical config and seed give byte-identical event logs")
{
    auto run_log = [](std::uint64_t seed) {
        SimConfig cfg = quiet_config(300.0);
        cfg.seed = seed;
        cfg.load.arrival_rate_per_second = 3.0;
        cfg.load.account_count = 256;
        std::ostringstream log;
        Kernel kernel(cfg, {}, &log);
        kernel.run();
        return log.str();
    };
    std::string a = run_log(21);
    std::string b = run_log(21);
    std::string c = run_log(22);
    CHECK(a == b);
    CHECK(a != c);
    CHECK(a.find("\"kind\":\"BlockMined\"") != std::string::npos);
}

TEST_CASE("kernel: mempool stays valid against the head state after each block")
{
    SimConfig cfg = quiet_config(400.0);
    cfg.load.arrival_rate_per_second = 10.0;
    cfg.load.account_count = 512;
    Kernel kernel(cfg, {});
    kernel.run();
    // Every still-pending entry must be individually coverable and unspent.
    const WorldState& state = kernel.state();
    for (const Transaction* tx : kernel.pool().pending()) {
        const Account* acct = state.find(tx->sender);
        REQUIRE(acct != nullptr);
        CHECK(tx->nonce >= acct->nonce);
        CHECK(acct->balance >= tx->max_cost());
    }
}
