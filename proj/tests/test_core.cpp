// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "agasp/chain.hpp"
#include "agasp/contract.hpp"
#include "agasp/keys.hpp"
#include "agasp/sha256.hpp"

#include <random>

using namespace agasp;

namespace {

Address test_address(std::uint8_t n)
{
    Address a;
    a.bytes[19] = n;
    return a;
}

WorldState make_state()
{
    WorldState state;
    state.contract_address = contract_genesis_address();
    state.accounts[state.contract_address] = Account{0, 0, AccountKind::Contract};
    return state;
}

const Address kMiner = test_address(0xee);

Transaction transfer_tx(const Address& from, std::uint64_t nonce, const Address& to, Wei value,
                        Wei gas_price = gwei(10), std::uint64_t gas_limit = 21'000)
{
    return make_transaction(from, nonce, to, value, gas_price, gas_limit, std::nullopt, 0, 0);
}

// Independent multiplication route: 64-bit split long multiplication,
// asserting no overflow past 128 bits.
Wei mul_oracle(Wei a, std::uint64_t b)
{
    Wei lo = (a & 0xFFFFFFFFFFFFFFFFull) * b;
    Wei hi = (a >> 64) * b;
    REQUIRE((hi >> 64) == 0);
    Wei shifted = hi << 64;
    REQUIRE(shifted + lo >= lo);
    return shifted + lo;
}

} // namespace

TEST_CASE("sha256 matches published vectors")
{
    CHECK(hash_content(std::span<const std::uint8_t>{}).hex() ==
          "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    const std::uint8_t abc[] = {'a', 'b', 'c'};
    CHECK(hash_content(std::span<const std::uint8_t>(abc, 3)).hex() ==
          "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
    CHECK(hash_content(std::span<const std::uint8_t>{}) ==
          hash_content(std::span<const std::uint8_t>{}));
}

TEST_CASE("byte writer is big-endian with length prefixes")
{
    ByteWriter w;
    w.put_u32(0x01020304);
    w.put_u64(0x0102030405060708ull);
    w.put_string("ab");
    auto data = w.data();
    REQUIRE(data.size() == 4 + 8 + 4 + 2);
    CHECK(data[0] == 0x01);
    CHECK(data[3] == 0x04);
    CHECK(data[4] == 0x01);
    CHECK(data[11] == 0x08);
    CHECK(data[15] == 2); // length prefix
    CHECK(data[16] == 'a');
}

TEST_CASE("wei string round trip")
{
    CHECK(wei_to_string(0) == "0");
    CHECK(wei_to_string(ether(1)) == "1000000000000000000");
    Wei big = ether(1'000'000'000) * 1'000'000'000ull; // 10^36
    CHECK(wei_from_string(wei_to_string(big)) == big);
    CHECK_THROWS(wei_from_string("12x"));
}

TEST_CASE("transactions differing only in nonce get different ids")
{
    Transaction a = transfer_tx(test_address(1), 0, test_address(2), 5);
    Transaction b = transfer_tx(test_address(1), 1, test_address(2), 5);
    ByteWriter wa;
    ByteWriter wb;
    a.serialize_content(wa);
    b.serialize_content(wb);
    CHECK(hash_content(wa) != hash_content(wb)); // oracle: hash both serializations
    CHECK(a.id != b.id);
    CHECK(a.id == hash_content(wa));
}

TEST_CASE("genesis block is deterministic and empty")
{
    Block g1 = make_genesis(8'000'000);
    Block g2 = make_genesis(8'000'000);
    CHECK(g1.hash == g2.hash);
    CHECK(g1.transactions.empty());
    CHECK(g1.number == 0);
    CHECK(g1.parent_hash.is_zero());
    CHECK(g1.hash != make_genesis(1'000'000).hash);
}

TEST_CASE("compute_fee")
{
    SUBCASE("inverted fee-table calibration point")
    {
        CHECK(compute_fee(10'000'000'000ull, 32'308, 70'000) == 323'080'000'000'000ull);
    }
    SUBCASE("zero gas used")
    {
        CHECK(compute_fee(123'456'789, 0, 70'000) == 0);
    }
    SUBCASE("min clamps at the gas limit")
    {
        CHECK(compute_fee(10'000'000'000ull, 90'000, 70'000) == 700'000'000'000'000ull);
    }
    SUBCASE("randomized against long-multiplication oracle")
    {
        std::mt19937_64 rng(42);
        for (int i = 0; i < 10'000; ++i) {
            Wei price = rng() % (Wei(1) << 70);
            std::uint64_t used = rng() % 10'000'000;
            std::uint64_t limit = rng() % 10'000'000 + 1;
            Wei expected = mul_oracle(price, used < limit ? used : limit);
            CHECK(compute_fee(price, used, limit) == expected);
        }
    }
}

TEST_CASE("validate_transaction boundaries")
{
    WorldState state = make_state();
    Address sender = test_address(1);
    Transaction tx = transfer_tx(sender, 0, test_address(2), ether(1));
    Wei max_fee = tx.gas_price * static_cast<Wei>(tx.gas_limit);

    SUBCASE("unknown sender")
    {
        CHECK(validate_transaction(state, tx) == TxValidity::UnknownSender);
    }
    SUBCASE("balance exactly value + max fee is ok")
    {
        state.accounts[sender] = Account{ether(1) + max_fee, 0, AccountKind::User};
        CHECK(validate_transaction(state, tx) == TxValidity::Ok);
    }
    SUBCASE("one wei short is insufficient")
    {
        state.accounts[sender] = Account{ether(1) + max_fee - 1, 0, AccountKind::User};
        CHECK(validate_transaction(state, tx) == TxValidity::InsufficientFunds);
    }
    SUBCASE("replayed nonce")
    {
        state.accounts[sender] = Account{ether(10), 1, AccountKind::User};
        CHECK(validate_transaction(state, tx) == TxValidity::BadNonce);
    }
}

TEST_CASE("apply_transaction plain transfer balance oracle")
{
    WorldState state = make_state();
    Address sender = test_address(1);
    Address recipient = test_address(2);
    state.accounts[sender] = Account{ether(2), 0, AccountKind::User};
    GasSchedule schedule;

    Transaction tx = transfer_tx(sender, 0, recipient, ether(1), 10'000'000'000ull, 21'000);
    Wei before_total = state.total_wei();
    Receipt receipt = apply_transaction(state, tx, kMiner, 1, schedule);

    Wei fee = 210'000'000'000'000ull; // 21000 * 10^10, from the fee formula by hand
    CHECK(receipt.status == TxStatus::Success);
    CHECK(receipt.gas_used == 21'000);
    CHECK(receipt.fee == fee);
    CHECK(state.balance(sender) == ether(2) - ether(1) - fee);
    CHECK(state.balance(recipient) == ether(1));
    CHECK(state.balance(kMiner) == fee);
    CHECK(state.at(sender).nonce == 1);
    CHECK(state.total_wei() == before_total);
}

TEST_CASE("conservation and nonce monotonicity under random workload")
{
    WorldState state = make_state();
    GasSchedule schedule;
    std::mt19937_64 rng(7);
    std::vector<Address> actors;
    for (std::uint8_t i = 1; i <= 8; ++i) {
        actors.push_back(test_address(i));
        state.accounts[actors.back()] = Account{ether(100), 0, AccountKind::User};
    }
    Wei genesis_total = state.total_wei();
    std::map<Address, std::uint64_t> applied_nonces;

    int applied = 0;
    for (int i = 0; i < 10'000; ++i) {
        const Address& from = actors[rng() % actors.size()];
        const Address& to = actors[rng() % actors.size()];
        Wei value = rng() % static_cast<std::uint64_t>(1e18);
        Transaction tx = transfer_tx(from, state.at(from).nonce, to, value,
                                     1 + rng() % 100'000'000'000ull, 21'000);
        if (validate_transaction(state, tx) != TxValidity::Ok) continue;
        Receipt receipt = apply_transaction(state, tx, kMiner, 1, schedule);
        CHECK(receipt.fee == compute_fee(tx.gas_price, receipt.gas_used, tx.gas_limit));
        CHECK(tx.nonce == applied_nonces[from]); // 0,1,2,... no gaps, no repeats
        applied_nonces[from] = tx.nonce + 1;
        ++applied;
    }
    CHECK(applied > 9'000);
    CHECK(state.total_wei() == genesis_total);
}

TEST_CASE("contract: setGasInfo and getGasInfo")
{
    WorldState state = make_state();
    Address station = test_address(10);
    state.accounts[station] = Account{ether(1), 0, AccountKind::User};

    SUBCASE("posting then reading returns exactly what was posted")
    {
        SetGasInfoArgs args;
        args.min_deposit = 100'000'000'000'000'000ull;
        args.prices = {{"regular", 5'923'076'923'000ull}};
        auto outcome = contract::execute(state, station, 0, ContractCall{args}, 3);
        REQUIRE(outcome.status == TxStatus::Success);
        const StationInfo* info = contract::get_gas_info(state, station);
        REQUIRE(info != nullptr);
        CHECK(info->min_deposit == args.min_deposit);
        CHECK(info->prices == args.prices);
        CHECK(info->last_updated_block == 3);
    }
    SUBCASE("unknown station")
    {
        CHECK(contract::get_gas_info(state, test_address(99)) == nullptr);
    }
    SUBCASE("empty price map reverts")
    {
        SetGasInfoArgs args;
        args.min_deposit = 1;
        auto outcome = contract::execute(state, station, 0, ContractCall{args}, 3);
        CHECK(outcome.status == TxStatus::Reverted);
        CHECK(outcome.revert_reason == "InvalidPrices");
    }
    SUBCASE("zero min deposit reverts")
    {
        SetGasInfoArgs args;
        args.min_deposit = 0;
        args.prices = {{"regular", 1}};
        auto outcome = contract::execute(state, station, 0, ContractCall{args}, 3);
        CHECK(outcome.revert_reason == "InvalidMinDeposit");
    }
    SUBCASE("reads cause no state change")
    {
        SetGasInfoArgs args;
        args.min_deposit = 10;
        args.prices = {{"regular", 7}};
        REQUIRE(contract::execute(state, station, 0, ContractCall{args}, 3).status ==
                TxStatus::Success);
        Hash32 before = state.state_hash();
        contract::get_gas_info(state, station);
        contract::verify_deposit(state, station, test_address(50));
        CHECK(state.state_hash() == before);
    }
}

namespace {

// Posts a listing and escrows a deposit; returns the vehicle address.
Address setup_deposit(WorldState& state, const Address& station, Wei min_deposit, Wei price,
                      Wei deposit_value)
{
    state.accounts[station] = Account{ether(1), 0, AccountKind::User};
    SetGasInfoArgs post;
    post.min_deposit = min_deposit;
    post.prices = {{"regular", price}};
    REQUIRE(contract::execute(state, station, 0, ContractCall{post}, 1).status ==
            TxStatus::Success);

    Address vehicle = test_address(20);
    state.accounts[vehicle] = Account{ether(1000), 0, AccountKind::User};
    SendDepositArgs dep;
    dep.station = station;
    auto outcome = contract::execute(state, vehicle, deposit_value, ContractCall{dep}, 2);
    REQUIRE(outcome.status == TxStatus::Success);
    return vehicle;
}

} // namespace

TEST_CASE("contract: sendDeposit")
{
    WorldState state = make_state();
    Address station = test_address(10);
    state.accounts[station] = Account{ether(1), 0, AccountKind::User};
    SetGasInfoArgs post;
    post.min_deposit = 100'000'000'000'000'000ull; // 10^17
    post.prices = {{"regular", 5'923'076'923'000ull}};
    REQUIRE(contract::execute(state, station, 0, ContractCall{post}, 1).status ==
            TxStatus::Success);
    Address vehicle = test_address(20);
    state.accounts[vehicle] = Account{ether(1), 0, AccountKind::User};
    SendDepositArgs dep;
    dep.station = station;

    SUBCASE("deposit at the exact minimum is accepted and escrowed")
    {
        Wei contract_before = state.balance(state.contract_address);
        Wei vehicle_before = state.balance(vehicle);
        auto outcome = contract::execute(state, vehicle, post.min_deposit, ContractCall{dep}, 2);
        REQUIRE(outcome.status == TxStatus::Success);
        CHECK(state.balance(state.contract_address) == contract_before + post.min_deposit);
        CHECK(state.balance(vehicle) == vehicle_before - post.min_deposit);
        CHECK(contract::verify_deposit(state, station, vehicle));
        CHECK(state.contract.deposits.at(vehicle).price_snapshot == post.prices);
    }
    SUBCASE("one wei below the minimum reverts")
    {
        auto outcome =
            contract::execute(state, vehicle, post.min_deposit - 1, ContractCall{dep}, 2);
        CHECK(outcome.status == TxStatus::Reverted);
        CHECK(outcome.revert_reason == "BelowMinimum");
        CHECK(state.balance(state.contract_address) == 0);
    }
    SUBCASE("unknown station reverts")
    {
        SendDepositArgs bad;
        bad.station = test_address(77);
        auto outcome = contract::execute(state, vehicle, post.min_deposit, ContractCall{bad}, 2);
        CHECK(outcome.revert_reason == "UnknownStation");
    }
    SUBCASE("second active deposit reverts")
    {
        REQUIRE(contract::execute(state, vehicle, post.min_deposit, ContractCall{dep}, 2).status ==
                TxStatus::Success);
        auto outcome = contract::execute(state, vehicle, post.min_deposit, ContractCall{dep}, 3);
        CHECK(outcome.revert_reason == "AlreadyDeposited");
    }
}

TEST_CASE("contract: verifyDeposit is station-scoped and cleared by settlement")
{
    WorldState state = make_state();
    Address station = test_address(10);
    Address vehicle = setup_deposit(state, station, 100'000'000'000'000'000ull,
                                    5'923'076'923'000ull, 100'000'000'000'000'000ull);

    CHECK(contract::verify_deposit(state, station, vehicle));
    CHECK_FALSE(contract::verify_deposit(state, test_address(11), vehicle));
    CHECK_FALSE(contract::verify_deposit(state, station, test_address(99)));

    SendFuelUsageArgs usage;
    usage.vehicle = vehicle;
    usage.fuel_type = "regular";
    usage.milligallons = 1'000;
    REQUIRE(contract::execute(state, station, 0, ContractCall{usage}, 4).status ==
            TxStatus::Success);
    CHECK_FALSE(contract::verify_deposit(state, station, vehicle));
}

TEST_CASE("contract: sendFuelUsage settlement")
{
    WorldState state = make_state();
    Address station = test_address(10);
    const Wei deposit = 100'000'000'000'000'000ull;        // 10^17
    const Wei price = 5'923'076'923'000ull;                // $3.85/gal at $650/Ether
    Address vehicle = setup_deposit(state, station, deposit, price, deposit);
    SendFuelUsageArgs usage;
    usage.vehicle = vehicle;
    usage.fuel_type = "regular";

    SUBCASE("12 gallon fill: payment plus change equals the deposit")
    {
        usage.milligallons = 12'000;
        Wei station_before = state.balance(station);
        Wei vehicle_before = state.balance(vehicle);
        auto outcome = contract::execute(state, station, 0, ContractCall{usage}, 4);
        REQUIRE(outcome.status == TxStatus::Success);
        CHECK(state.balance(station) - station_before == 71'076'923'076'000'000ull);
        CHECK(state.balance(vehicle) - vehicle_before == 28'923'076'924'000'000ull);
        CHECK(state.balance(state.contract_address) == 0);
    }
    SUBCASE("zero fuel refunds the whole deposit and deletes the record")
    {
        usage.milligallons = 0;
        Wei vehicle_before = state.balance(vehicle);
        auto outcome = contract::execute(state, station, 0, ContractCall{usage}, 4);
        REQUIRE(outcome.status == TxStatus::Success);
        CHECK(state.balance(vehicle) - vehicle_before == deposit);
        CHECK(state.contract.deposits.count(vehicle) == 0);
    }
    SUBCASE("over-dispense caps payment at the deposit and logs a shortfall")
    {
        usage.milligallons = 50'000; // uncapped ~2.96e17 > 1e17 deposit
        Wei station_before = state.balance(station);
        auto outcome = contract::execute(state, station, 0, ContractCall{usage}, 4);
        REQUIRE(outcome.status == TxStatus::Success);
        CHECK(state.balance(station) - station_before == deposit);
        bool shortfall_logged = false;
        for (const auto& log : outcome.logs) shortfall_logged |= log.event == "Shortfall";
        CHECK(shortfall_logged);
    }
    SUBCASE("wrong station cannot settle")
    {
        usage.milligallons = 1;
        Address other = test_address(11);
        state.accounts[other] = Account{ether(1), 0, AccountKind::User};
        auto outcome = contract::execute(state, other, 0, ContractCall{usage}, 4);
        CHECK(outcome.revert_reason == "NoDeposit");
    }
    SUBCASE("unknown fuel type reverts")
    {
        usage.fuel_type = "diesel";
        usage.milligallons = 1;
        auto outcome = contract::execute(state, station, 0, ContractCall{usage}, 4);
        CHECK(outcome.revert_reason == "UnknownFuelType");
    }
}

TEST_CASE("contract: settlement uses the snapshot, not current prices")
{
    WorldState state = make_state();
    Address station = test_address(10);
    const Wei deposit = 100'000'000'000'000'000ull;
    const Wei old_price = 5'923'076'923'000ull;
    Address vehicle = setup_deposit(state, station, deposit, old_price, deposit);

    // Repost at triple the price while the deposit is active.
    SetGasInfoArgs repost;
    repost.min_deposit = deposit;
    repost.prices = {{"regular", old_price * 3}};
    REQUIRE(contract::execute(state, station, 0, ContractCall{repost}, 3).status ==
            TxStatus::Success);

    SendFuelUsageArgs usage;
    usage.vehicle = vehicle;
    usage.fuel_type = "regular";
    usage.milligallons = 12'000;
    Wei station_before = state.balance(station);
    REQUIRE(contract::execute(state, station, 0, ContractCall{usage}, 4).status ==
            TxStatus::Success);
    CHECK(state.balance(station) - station_before == 71'076'923'076'000'000ull); // old price
}

TEST_CASE("contract: randomized escrow conservation property")
{
    std::mt19937_64 rng(99);
    for (int round = 0; round < 200; ++round) {
        WorldState state = make_state();
        Address station = test_address(10);
        Wei min_deposit = 1 + rng() % static_cast<std::uint64_t>(1e18);
        Wei price = 1 + rng() % static_cast<std::uint64_t>(1e13);
        Wei deposit = min_deposit + rng() % static_cast<std::uint64_t>(1e18);
        Address vehicle = setup_deposit(state, station, min_deposit, price, deposit);

        if (rng() % 2) { // interleaved repost must not matter
            SetGasInfoArgs repost;
            repost.min_deposit = 1 + rng() % static_cast<std::uint64_t>(1e18);
            repost.prices = {{"regular", 1 + rng() % static_cast<std::uint64_t>(1e13)}};
            REQUIRE(contract::execute(state, station, 0, ContractCall{repost}, 3).status ==
                    TxStatus::Success);
        }

        SendFuelUsageArgs usage;
        usage.vehicle = vehicle;
        usage.fuel_type = "regular";
        usage.milligallons = rng() % 200'000;
        Wei station_before = state.balance(station);
        Wei vehicle_before = state.balance(vehicle);
        auto outcome = contract::execute(state, station, 0, ContractCall{usage}, 4);
        REQUIRE(outcome.status == TxStatus::Success);
        Wei payment = state.balance(station) - station_before;
        Wei change = state.balance(vehicle) - vehicle_before;
        REQUIRE(payment + change == deposit);
        contract::Settlement expected = contract::settle(deposit, price, usage.milligallons);
        REQUIRE(payment == expected.payment);
        REQUIRE(change == expected.change);
    }
}

TEST_CASE("reverted calls keep the fee but roll back value and storage")
{
    WorldState state = make_state();
    GasSchedule schedule;
    Address station = test_address(10);
    Address vehicle = setup_deposit(state, station, 1'000, 7, 1'000);

    // A second sendDeposit from the same vehicle reverts (AlreadyDeposited);
    // the fee is still charged, storage is untouched.
    auto stations_before = state.contract.stations;
    auto deposits_before = state.contract.deposits;
    Wei vehicle_before = state.balance(vehicle);
    Wei total_before = state.total_wei();

    SendDepositArgs dep;
    dep.station = station;
    Transaction tx = make_transaction(vehicle, 0, state.contract_address, 5'000, gwei(10), 70'000,
                                      ContractCall{dep}, 0, 0);
    REQUIRE(validate_transaction(state, tx) == TxValidity::Ok);
    Receipt receipt = apply_transaction(state, tx, kMiner, 5, schedule);
    CHECK(receipt.status == TxStatus::Reverted);
    CHECK(receipt.gas_used == 49'231);
    CHECK(receipt.fee == compute_fee(tx.gas_price, 49'231, 70'000));
    CHECK(state.balance(vehicle) == vehicle_before - receipt.fee); // value returned
    CHECK(state.at(vehicle).nonce == 1);
    CHECK(state.contract.stations.size() == stations_before.size());
    CHECK(state.contract.deposits.size() == deposits_before.size());
    CHECK(state.contract.deposits.at(vehicle).amount == deposits_before.at(vehicle).amount);
    CHECK(state.total_wei() == total_before);
}

TEST_CASE("value attached to non-payable calls reverts")
{
    WorldState state = make_state();
    GasSchedule schedule;
    Address station = test_address(10);
    state.accounts[station] = Account{ether(1), 0, AccountKind::User};
    SetGasInfoArgs args;
    args.min_deposit = 1;
    args.prices = {{"regular", 1}};
    Transaction tx = make_transaction(station, 0, state.contract_address, 123, gwei(10), 70'000,
                                      ContractCall{args}, 0, 0);
    Receipt receipt = apply_transaction(state, tx, kMiner, 1, schedule);
    CHECK(receipt.status == TxStatus::Reverted);
    CHECK(state.contract.stations.empty());
    CHECK(state.balance(state.contract_address) == 0);
}

namespace {

struct ChainFixture {
    std::uint64_t gas_limit = 8'000'000;
    WorldState genesis;
    GasSchedule schedule;
    std::vector<Address> actors;

    ChainFixture()
    {
        genesis = make_state();
        for (std::uint8_t i = 1; i <= 4; ++i) {
            actors.push_back(test_address(i));
            genesis.accounts[actors.back()] = Account{ether(100), 0, AccountKind::User};
        }
    }

    Chain chain() const { return Chain(gas_limit, genesis, schedule); }

    Block block_on(const Block& parent, std::vector<Transaction> txs,
                   const Address& miner = kMiner) const
    {
        Block b;
        b.number = parent.number + 1;
        b.parent_hash = parent.hash;
        b.timestamp = parent.timestamp + 15 * kTicksPerSecond;
        b.transactions = std::move(txs);
        b.block_gas_limit = gas_limit;
        b.miner = miner;
        std::uint64_t gas = 0;
        for (const auto& tx : b.transactions) {
            std::uint64_t used = schedule.gas_for(tx);
            gas += used < tx.gas_limit ? used : tx.gas_limit;
        }
        b.gas_used_total = gas;
        b.hash = b.compute_hash();
        return b;
    }
};

} // namespace

TEST_CASE("chain: append extends head")
{
    ChainFixture fx;
    Chain chain = fx.chain();
    Block b1 = fx.block_on(chain.genesis(), {transfer_tx(fx.actors[0], 0, fx.actors[1], 1'000)});
    REQUIRE(chain.append_block(b1).ok);
    CHECK(chain.head().hash == b1.hash);
    CHECK(chain.head_number() == 1);
    CHECK(chain.head_state().balance(fx.actors[1]) == ether(100) + 1'000);
}

TEST_CASE("chain: competing equal-length branches keep the first-received head")
{
    ChainFixture fx;
    Chain chain = fx.chain();
    Block first = fx.block_on(chain.genesis(), {}, test_address(0xa1));
    Block second = fx.block_on(chain.genesis(), {}, test_address(0xa2));
    REQUIRE(first.hash != second.hash);

    SUBCASE("first then second")
    {
        REQUIRE(chain.append_block(first).ok);
        REQUIRE(chain.append_block(second).ok);
        CHECK(chain.head().hash == first.hash);
    }
    SUBCASE("second then first")
    {
        REQUIRE(chain.append_block(second).ok);
        REQUIRE(chain.append_block(first).ok);
        CHECK(chain.head().hash == second.hash);
    }
    SUBCASE("longer branch wins and state follows the reorg")
    {
        REQUIRE(chain.append_block(first).ok);
        REQUIRE(chain.append_block(second).ok);
        Block extend = fx.block_on(second, {transfer_tx(fx.actors[0], 0, fx.actors[1], 777)});
        REQUIRE(chain.append_block(extend).ok);
        CHECK(chain.head().hash == extend.hash);
        CHECK(chain.head_state().balance(fx.actors[1]) == ether(100) + 777);
        CHECK(chain.head_state().state_hash() == chain.replay_state().state_hash());
    }
}

TEST_CASE("chain: append rejects unknown parents and invalid blocks")
{
    ChainFixture fx;
    Chain chain = fx.chain();

    SUBCASE("unknown parent")
    {
        Block orphan = fx.block_on(chain.genesis(), {});
        orphan.parent_hash = Hash32::from_hex(
            "00000000000000000000000000000000000000000000000000000000000000ff");
        orphan.hash = orphan.compute_hash();
        auto result = chain.append_block(orphan);
        CHECK_FALSE(result.ok);
        CHECK(result.error == AppendError::UnknownParent);
    }
    SUBCASE("tampered stored hash")
    {
        Block b = fx.block_on(chain.genesis(), {});
        b.hash.bytes[0] ^= 1;
        auto violations = chain.validate_block(b);
        REQUIRE(violations.size() == 1);
        CHECK(violations[0].what == "hash mismatch");
        CHECK_FALSE(chain.append_block(b).ok);
    }
    SUBCASE("gas accounting over the block limit")
    {
        Block b = fx.block_on(chain.genesis(), {});
        b.gas_used_total = fx.gas_limit + 1;
        b.hash = b.compute_hash();
        bool found = false;
        for (const auto& v : chain.validate_block(b)) {
            found |= v.what == "gas used exceeds block gas limit";
        }
        CHECK(found);
    }
    SUBCASE("underfunded sender inside the block")
    {
        Address pauper = test_address(0x7f); // not in genesis
        Block b = fx.block_on(chain.genesis(), {transfer_tx(pauper, 0, fx.actors[0], 1)});
        auto violations = chain.validate_block(b);
        REQUIRE_FALSE(violations.empty());
        CHECK(violations[0].what.find("UnknownSender") != std::string::npos);
        CHECK_FALSE(chain.append_block(b).ok);
    }
    SUBCASE("declared gas total must match the replay")
    {
        Block b = fx.block_on(chain.genesis(), {transfer_tx(fx.actors[0], 0, fx.actors[1], 1)});
        b.gas_used_total += 1;
        b.hash = b.compute_hash();
        auto violations = chain.validate_block(b);
        REQUIRE_FALSE(violations.empty());
        CHECK(violations[0].what.find("gas accounting mismatch") != std::string::npos);
    }
}

TEST_CASE("chain: replay equals incremental state under a random workload")
{
    ChainFixture fx;
    Chain chain = fx.chain();
    std::mt19937_64 rng(1234);
    for (int n = 0; n < 20; ++n) {
        std::vector<Transaction> txs;
        WorldState scratch = chain.head_state();
        for (int k = 0; k < 25; ++k) {
            const Address& from = fx.actors[rng() % fx.actors.size()];
            const Address& to = fx.actors[rng() % fx.actors.size()];
            Transaction tx = transfer_tx(from, scratch.at(from).nonce, to,
                                         rng() % static_cast<std::uint64_t>(1e17));
            if (validate_transaction(scratch, tx) != TxValidity::Ok) continue;
            apply_transaction(scratch, tx, kMiner, n + 1, fx.schedule);
            txs.push_back(tx);
        }
        Block b = fx.block_on(chain.head(), std::move(txs));
        REQUIRE(chain.append_block(b).ok);
    }
    CHECK(chain.head_number() == 20);
    WorldState replayed = chain.replay_state();
    CHECK(replayed.state_hash() == chain.head_state().state_hash());
    // Idempotence: a second replay gives the same digest.
    CHECK(chain.replay_state().state_hash() == replayed.state_hash());
}

TEST_CASE("address and challenge derivation are stable")
{
    CHECK(address_for_key(1) == address_for_key(1));
    CHECK(address_for_key(1) != address_for_key(2));
    CHECK(challenge_response(5, 9) == challenge_response(5, 9));
    CHECK(challenge_response(5, 9) != challenge_response(6, 9));
}
