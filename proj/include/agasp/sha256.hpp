// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/bytes.hpp"

#include <span>

namespace agasp {

// Content hash for transactions, blocks, and state digests (SHA-256).
Hash32 hash_content(std::span<const std::uint8_t> bytes);
Hash32 hash_content(const ByteWriter& w);

} // namespace agasp
