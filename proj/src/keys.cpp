// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/keys.hpp"

#include "agasp/sha256.hpp"

#include <cstring>

namespace agasp {

Address address_for_key(std::uint64_t key)
{
    ByteWriter w;
    w.put_string("agasp/key");
    w.put_u64(key);
    Hash32 digest = hash_content(w);
    Address a;
    std::memcpy(a.bytes.data(), digest.bytes.data(), a.bytes.size());
    return a;
}

Hash32 challenge_response(std::uint64_t key, std::uint64_t nonce)
{
    ByteWriter w;
    w.put_string("agasp/challenge");
    w.put_u64(key);
    w.put_u64(nonce);
    return hash_content(w);
}

} // namespace agasp
