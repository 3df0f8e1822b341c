// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/scenario/purchase.hpp"

namespace agasp::scenario {

struct AuditMismatch {
    std::string field;
    std::string expected; // derived from chain data
    std::string actual;   // claimed by the trace
};

struct AuditReport {
    bool clean = false;
    std::size_t checks = 0;
    std::vector<AuditMismatch> mismatches;

    nlohmann::ordered_json to_json() const;
};

// Recomputes a completed purchase from on-chain data only — transactions,
// receipts, and contract logs on the canonical branch — and compares every
// trace field against it: fees, amounts, snapshot prices, the settlement
// split, and the full step timeline. Off-chain steps must not appear on
// chain, and no extra transactions from the participants may hide between
// the recorded ones.
AuditReport audit_trace(const PurchaseTrace& trace, const Chain& chain);

} // namespace agasp::scenario
