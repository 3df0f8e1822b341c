// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#pragma once

#include "agasp/sim_time.hpp"
#include "agasp/transaction.hpp"

#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace agasp::netsim {

struct EvTxSubmitted {
    Transaction tx;
    SimTime propagation_delay = 0;
    bool background = false;
};

struct EvTxArrivedAtPool {
    Transaction tx;
    bool background = false;
};

struct EvBlockMined {};

struct EvBlockDelivered {
    Hash32 block_hash;
    std::uint64_t number = 0;
};

struct EvAgentTimer {
    std::string label;
    std::function<void()> fn;
};

using EventPayload =
    std::variant<EvTxSubmitted, EvTxArrivedAtPool, EvBlockMined, EvBlockDelivered, EvAgentTimer>;

const char* event_kind_name(const EventPayload& payload);

struct SimEvent {
    SimTime time = 0;
    std::uint64_t seq = 0; // tie-break for equal times
    EventPayload payload;
};

struct TimeInPastError : std::logic_error {
    explicit TimeInPastError(const std::string& what) : std::logic_error(what) {}
};

// Min-heap on (time, seq). Events at equal times run in schedule order.
class EventQueue {
public:
    // Throws TimeInPastError if `at` is before the caller's clock.
    std::uint64_t schedule(SimTime now, SimTime at, EventPayload payload);

    bool empty() const { return heap_.empty(); }
    const SimEvent& peek() const { return heap_.top(); }
    SimEvent pop();
    std::size_t size() const { return heap_.size(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const
        {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
};

} // namespace agasp::netsim
