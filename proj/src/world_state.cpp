// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/world_state.hpp"

#include "agasp/sha256.hpp"

#include <cstring>
#include <stdexcept>

namespace agasp {

Wei ContractStorage::escrow_total() const
{
    Wei total = 0;
    for (const auto& [vehicle, record] : deposits) {
        total += record.amount;
    }
    return total;
}

const Account* WorldState::find(const Address& addr) const
{
    auto it = accounts.find(addr);
    return it == accounts.end() ? nullptr : &it->second;
}

Account& WorldState::at(const Address& addr)
{
    auto it = accounts.find(addr);
    if (it == accounts.end()) throw std::out_of_range("unknown account " + addr.hex());
    return it->second;
}

Account& WorldState::get_or_create(const Address& addr)
{
    return accounts[addr];
}

Wei WorldState::balance(const Address& addr) const
{
    const Account* acct = find(addr);
    return acct ? acct->balance : 0;
}

Wei WorldState::total_wei() const
{
    Wei total = 0;
    for (const auto& [addr, acct] : accounts) {
        total += acct.balance;
    }
    return total;
}

Hash32 WorldState::state_hash() const
{
    ByteWriter w;
    w.put_u32(static_cast<std::uint32_t>(accounts.size()));
    for (const auto& [addr, acct] : accounts) {
        w.put_address(addr);
        w.put_u128(acct.balance);
        w.put_u64(acct.nonce);
        w.put_u8(static_cast<std::uint8_t>(acct.kind));
    }
    w.put_address(contract_address);
    w.put_u32(static_cast<std::uint32_t>(contract.stations.size()));
    for (const auto& [addr, info] : contract.stations) {
        w.put_address(addr);
        w.put_u128(info.min_deposit);
        w.put_u32(static_cast<std::uint32_t>(info.prices.size()));
        for (const auto& [fuel, price] : info.prices) {
            w.put_string(fuel);
            w.put_u128(price);
        }
        w.put_u64(info.last_updated_block);
    }
    w.put_u32(static_cast<std::uint32_t>(contract.deposits.size()));
    for (const auto& [vehicle, record] : contract.deposits) {
        w.put_address(vehicle);
        w.put_address(record.station);
        w.put_u128(record.amount);
        w.put_u32(static_cast<std::uint32_t>(record.price_snapshot.size()));
        for (const auto& [fuel, price] : record.price_snapshot) {
            w.put_string(fuel);
            w.put_u128(price);
        }
        w.put_u64(record.created_block);
    }
    return hash_content(w);
}

Address contract_genesis_address()
{
    static const Address addr = [] {
        const char tag[] = "agasp/contract/v1";
        Hash32 digest = hash_content(std::span<const std::uint8_t>(
            reinterpret_cast<const std::uint8_t*>(tag), sizeof(tag) - 1));
        Address a;
        std::memcpy(a.bytes.data(), digest.bytes.data(), a.bytes.size());
        return a;
    }();
    return addr;
}

} // namespace agasp
