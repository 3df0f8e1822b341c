// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/experiments/fee_table.hpp"

#include <stdexcept>

namespace agasp::experiments {

Decimal credit_card_fee(const Decimal& rate, const Decimal& amount, const Decimal& flat)
{
    return rate.times(amount) + flat;
}

const FeeRow* FeeTable::row(const std::string& transaction) const
{
    for (const FeeRow& r : rows) {
        if (r.transaction == transaction) return &r;
    }
    return nullptr;
}

std::string FeeTable::to_csv() const
{
    std::string out = "transaction,paying_party,fee_usd\n";
    for (const FeeRow& r : rows) {
        out += r.transaction + "," + r.paying_party + "," + r.fee_usd.cents_string() + "\n";
    }
    return out;
}

std::string FeeTable::to_text() const
{
    char buf[64];
    std::string out;
    out += "transaction        paying party           fee ($)\n";
    for (const FeeRow& r : rows) {
        std::snprintf(buf, sizeof(buf), "%-18s %-22s %6s\n", r.transaction.c_str(),
                      r.paying_party.c_str(), r.fee_usd.cents_string().c_str());
        out += buf;
    }
    std::snprintf(buf, sizeof(buf), "total savings:   %.1f%%\n", total_savings_pct);
    out += buf;
    std::snprintf(buf, sizeof(buf), "station savings: %.1f%%\n", station_savings_pct);
    out += buf;
    return out;
}

FeeTable fee_table(const FeeConfig& config, const GasSchedule& schedule)
{
    FeeTable table;
    table.purchase_amount_usd = config.gallons.times(config.usd_per_gallon);

    Decimal credit =
        credit_card_fee(config.credit_rate, table.purchase_amount_usd, config.credit_flat);
    table.rows.push_back({"creditCard", "gasStation", credit});

    const char* functions[] = {"setGasInfo", "sendDeposit", "sendFuelUsage"};
    const char* payers[] = {"gasStation", "vehicle", "gasStation"};
    Wei chain_total_wei = 0;
    for (int i = 0; i < 3; ++i) {
        auto it = schedule.per_contract_function.find(functions[i]);
        if (it == schedule.per_contract_function.end()) {
            throw std::out_of_range(std::string("gas schedule missing ") + functions[i]);
        }
        // Probes and agents set gasLimit above the scheduled cost, so the
        // fee is gasPrice * gasUsed.
        Wei fee_wei = config.gas_price * static_cast<Wei>(it->second);
        chain_total_wei += fee_wei;
        table.rows.push_back(
            {functions[i], payers[i], Decimal::from_wei(fee_wei, config.usd_per_ether)});
    }
    table.rows.push_back(
        {"total", "vehicleAndGasStation", Decimal::from_wei(chain_total_wei, config.usd_per_ether)});

    // Savings follow from the rounded rows exactly as a reader would
    // compute them from the printed table.
    double credit_cents = static_cast<double>(credit.round_to_cents());
    double total_cents = static_cast<double>(table.row("total")->fee_usd.round_to_cents());
    double station_cents = static_cast<double>(table.row("sendFuelUsage")->fee_usd.round_to_cents());
    if (credit_cents > 0) {
        table.total_savings_pct = (credit_cents - total_cents) / credit_cents * 100.0;
        table.station_savings_pct = (credit_cents - station_cents) / credit_cents * 100.0;
    }
    return table;
}

} // namespace agasp::experiments
