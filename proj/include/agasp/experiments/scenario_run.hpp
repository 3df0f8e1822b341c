// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/experiments/run_config.hpp"
#include "agasp/scenario/audit.hpp"

namespace agasp::experiments {

struct ScenarioRunResult {
    scenario::PurchaseTrace trace;
    scenario::AuditReport audit;
    std::string event_log; // JSON lines
    Hash32 final_state_hash;
    bool ok = false; // purchase settled and the audit came back clean
};

// Executes the configured end-to-end purchase over a fresh simulation and
// audits the trace against the resulting chain.
ScenarioRunResult run_scenario(const RunConfig& cfg);

} // namespace agasp::experiments
