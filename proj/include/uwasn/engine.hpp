#pragma once

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "uwasn/event_queue.hpp"
#include "uwasn/ga.hpp"
#include "uwasn/metrics.hpp"
#include "uwasn/routing.hpp"
#include "uwasn/world.hpp"

namespace uwasn {

// Delivered-packet record for invariant checks: the transmitter chain and
// each transmitter's position at transmit time (positions are fixed within a
// round, so the end-of-round snapshot is exact).
struct DeliveredTrace {
    int round = 0;
    std::uint64_t packet_id = 0;
    double delay = 0.0;
    std::vector<NodeId> hops;
    std::vector<Position> hop_positions;
    Position anchor_source_pos;
    Position anchor_sink_pos;
};

// One physical transmission (first EER attempt or broadcast), in event order.
struct TransmitRecord {
    int round = 0;
    std::uint64_t packet_id = 0;
    NodeId node = 0;
    double time = 0.0;
};

struct RunResult {
    std::vector<RoundMetrics> rounds;
    std::vector<DeliveredTrace> traces;          // only when recording is enabled
    std::vector<TransmitRecord> transmits;       // only when recording is enabled
    std::vector<Position> deployment_positions;  // snapshot right after deploy
};

struct EngineOptions {
    bool record_traces = false;
};

// One deterministic simulation instance. Strictly single-threaded; every
// random draw comes from a named stream keyed on (config.seed, purpose), so
// deployment and mobility are identical across protocols on the same seed.
class Engine {
public:
    Engine(const ScenarioConfig& config, ProtocolKind protocol, EngineOptions options = {});

    // Takes a prebuilt state (constructed topologies in tests); rng streams
    // still derive from state.config.seed.
    Engine(NetworkState state, ProtocolKind protocol, EngineOptions options = {});

    // One round: a packet per source, propagation until the queue drains,
    // then mobility and power toggling.
    RoundMetrics run_round(int round);

    // Runs config.rounds rounds.
    RunResult run();

    const NetworkState& state() const { return state_; }
    const std::vector<DeliveredTrace>& traces() const { return traces_; }
    const std::vector<TransmitRecord>& transmits() const { return transmits_; }
    int last_round_dropped() const { return last_round_dropped_; }

private:
    struct PacketBook {
        std::vector<std::uint8_t> seen;            // node has (or will have) a copy
        std::vector<std::uint8_t> forwarded;       // node already transmitted this id
        std::vector<std::uint8_t> hold_cancelled;  // duplicate overheard during hold
        bool delivered = false;
    };

    void handle(const Event& event);
    void generate_packets(int round, double now);
    void on_arrival(const Event& event);
    void on_hold_expire(const Event& event);
    void broadcast_transmit(NodeId transmitter, Packet packet, double time);
    void eer_transmit(const Event& event);
    PacketBook& book(std::uint64_t packet_id);

    NetworkState state_;
    ProtocolKind protocol_;
    EngineOptions options_;
    RngStream mobility_rng_;
    RngStream channel_rng_;
    RngStream ga_rng_;
    EventQueue queue_;
    std::unordered_map<std::uint64_t, PacketBook> books_;
    std::optional<RangeGraph> round_graph_;  // shared by all GA calls of one round
    RoundMetrics current_;
    std::vector<DeliveredTrace> traces_;
    std::vector<TransmitRecord> transmits_;
    std::uint64_t next_packet_id_ = 0;
    int ttl_hops_ = 0;
    int last_round_dropped_ = 0;
};

RunResult run_simulation(const ScenarioConfig& config, ProtocolKind protocol,
                         EngineOptions options = {});

}  // namespace uwasn
