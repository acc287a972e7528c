#pragma once

#include <cstdint>
#include <queue>
#include <stdexcept>
#include <vector>

#include "uwasn/routing.hpp"

namespace uwasn {

enum class EventKind { PacketArrival, HoldExpire, RoundStart, RoundEnd };

struct Event {
    double time = 0.0;
    std::uint64_t seq = 0;  // insertion counter; breaks time ties deterministically
    EventKind kind = EventKind::RoundStart;
    NodeId node = 0;
    Packet packet;
    int round = 0;
    int attempt = 0;         // EER retransmission counter
    bool first_copy = true;  // false when this arrival duplicates an earlier one at `node`
};

// Min-queue over (time, seq). Pops never go backward in time and scheduling
// into the past is rejected.
class EventQueue {
public:
    void schedule(Event event) {
        if (event.time < clock_)
            throw std::invalid_argument("EventQueue::schedule: event time precedes the clock");
        event.seq = next_seq_++;
        heap_.push(std::move(event));
    }

    bool empty() const { return heap_.empty(); }
    std::size_t size() const { return heap_.size(); }
    double clock() const { return clock_; }

    Event pop() {
        Event e = heap_.top();
        heap_.pop();
        clock_ = e.time;
        return e;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double clock_ = 0.0;
};

}  // namespace uwasn
