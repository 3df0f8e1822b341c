// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/block.hpp"

#include "agasp/sha256.hpp"

namespace agasp {

Hash32 Block::compute_hash() const
{
    ByteWriter w;
    w.put_u64(number);
    w.put_hash(parent_hash);
    w.put_u64(timestamp);
    w.put_u32(static_cast<std::uint32_t>(transactions.size()));
    for (const auto& tx : transactions) {
        tx.serialize_content(w);
    }
    w.put_u64(gas_used_total);
    w.put_u64(block_gas_limit);
    w.put_address(miner);
    return hash_content(w);
}

Block make_genesis(std::uint64_t block_gas_limit)
{
    Block genesis;
    genesis.number = 0;
    genesis.block_gas_limit = block_gas_limit;
    genesis.hash = genesis.compute_hash();
    return genesis;
}

} // namespace agasp
