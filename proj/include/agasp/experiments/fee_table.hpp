// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/experiments/decimal.hpp"
#include "agasp/ledger.hpp"

#include <string>
#include <vector>

namespace agasp::experiments {

// Economic parameters of the fee comparison.
struct FeeConfig {
    Decimal usd_per_ether = Decimal::from_string("650");
    Wei gas_price = gwei(10);
    Decimal credit_rate = Decimal::from_string("0.02");
    Decimal credit_flat = Decimal::from_string("0.25");
    Decimal gallons = Decimal::from_string("12");
    Decimal usd_per_gallon = Decimal::from_string("3.85");
};

// Fee = Rate * Amount + Flat, exact decimal arithmetic.
Decimal credit_card_fee(const Decimal& rate, const Decimal& amount, const Decimal& flat);

struct FeeRow {
    std::string transaction;
    std::string paying_party;
    Decimal fee_usd;
};

struct FeeTable {
    std::vector<FeeRow> rows; // creditCard, setGasInfo, sendDeposit, sendFuelUsage, total
    Decimal purchase_amount_usd;
    // Percentages derived from the rounded-cent rows, not hard-coded.
    double total_savings_pct = 0.0;
    double station_savings_pct = 0.0;

    const FeeRow* row(const std::string& transaction) const;
    std::string to_csv() const; // header: transaction,paying_party,fee_usd
    std::string to_text() const;
};

// Credit-card fee for refueling vs. per-function chain fees at the
// configured gasPrice, plus the combined and station-only savings.
FeeTable fee_table(const FeeConfig& config, const GasSchedule& schedule);

} // namespace agasp::experiments
