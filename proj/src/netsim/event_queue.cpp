// Copyright (c) 2026 The agasp-sim developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include "agasp/netsim/event_queue.hpp"

namespace agasp::netsim {

const char* event_kind_name(const EventPayload& payload)
{
    switch (payload.index()) {
    case 0: return "TxSubmitted";
    case 1: return "TxArrivedAtPool";
    case 2: return "BlockMined";
    case 3: return "BlockDelivered";
    case 4: return "AgentTimer";
    }
    return "unknown";
}

std::uint64_t EventQueue::schedule(SimTime now, SimTime at, EventPayload payload)
{
    if (at < now) {
        throw TimeInPastError("event scheduled at " + format_seconds(at) + " before clock " +
                              format_seconds(now));
    }
    SimEvent event;
    event.time = at;
    event.seq = next_seq_++;
    event.payload = std::move(payload);
    heap_.push(std::move(event));
    return heap_.size();
}

SimEvent EventQueue::pop()
{
    SimEvent event = heap_.top();
    heap_.pop();
    return event;
}

} // namespace agasp::netsim
