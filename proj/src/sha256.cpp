// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/sha256.hpp"

#include <openssl/evp.h>

#include <stdexcept>

namespace agasp {

Hash32 hash_content(std::span<const std::uint8_t> bytes)
{
    Hash32 out;
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), out.bytes.data(), &len, EVP_sha256(), nullptr) != 1 ||
        len != out.bytes.size()) {
        throw std::runtime_error("sha256 failed");
    }
    return out;
}

Hash32 hash_content(const ByteWriter& w)
{
    return hash_content(w.data());
}

} // namespace agasp
