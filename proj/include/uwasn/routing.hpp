#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uwasn/config.hpp"
#include "uwasn/world.hpp"

namespace uwasn {

enum class ProtocolKind { Vbf, Dbr, Eer };

ProtocolKind protocol_from_name(const std::string& name);  // "vbf" | "dbr" | "eer"
std::string to_string(ProtocolKind kind);

struct Packet {
    std::uint64_t id = 0;
    NodeId source = 0;
    double created_at = 0.0;           // seconds
    std::vector<NodeId> hops;          // transmitters so far, begins with source
    Position anchor_source_pos;        // source position frozen at creation
    Position anchor_sink_pos;          // sink position frozen at creation
    int payload_size = 0;              // bytes
    NodeId last_hop = 0;               // most recent transmitter
    Position last_hop_pos;             // its position at transmit time
    std::vector<NodeId> route;         // EER source route; empty for broadcast protocols
};

struct ProtocolDecision {
    enum class Action { Forward, Drop, Deliver };
    Action action = Action::Drop;
    double hold = 0.0;  // seconds, >= 0
};

// VBF desirableness hold: sqrt(alpha) * R/c + (R - d)/c with
// alpha = p/W + (R - d*cos_theta)/R, clamped so alpha and the hold stay >= 0.
double vbf_hold_time(double p, double d, double cos_theta, double pipe_radius, double range);

// DBR depth-progress hold: (2*tau/delta) * (R - depth_delta), tau = R/c,
// delta = depth_threshold when positive, else R/2; clamped at >= 0.
double dbr_hold_time(double depth_delta, double depth_threshold, double range);

// Eligibility + hold for a candidate forwarder. `p` is the node's distance to
// the packet's frozen source->sink segment; outside the pipe the packet drops.
ProtocolDecision vbf_decide(const SensorNode& node, const Packet& packet, const NetworkState& state,
                            double pipe_radius);

// Forward only when the node sits at least depth_threshold shallower than the
// previous hop.
ProtocolDecision dbr_decide(const SensorNode& node, const Packet& packet, const NetworkState& state,
                            double depth_threshold);

// Common protocol contract: the sink always delivers; VBF/DBR decide
// forward-with-hold or drop. EER packets are source-routed by the engine and
// never consult this.
ProtocolDecision on_receive(ProtocolKind kind, const SensorNode& node, const Packet& packet,
                            const NetworkState& state);

}  // namespace uwasn
