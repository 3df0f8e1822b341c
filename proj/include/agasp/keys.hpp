// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/bytes.hpp"

#include <cstdint>

namespace agasp {

// Key handles are modeled, not cryptographic: an agent owns a handle and an
// account is controlled by whoever holds the registered handle. The address
// is derived from the handle so tests and configs can mint agents cheaply.
Address address_for_key(std::uint64_t key);

// Challenge response for the off-chain identity handshake.
Hash32 challenge_response(std::uint64_t key, std::uint64_t nonce);

} // namespace agasp
