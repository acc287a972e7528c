#include "uwasn/routing.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace uwasn {

ProtocolKind protocol_from_name(const std::string& name) {
    if (name == "vbf") return ProtocolKind::Vbf;
    if (name == "dbr") return ProtocolKind::Dbr;
    if (name == "eer") return ProtocolKind::Eer;
    throw ConfigError("unknown protocol '" + name + "' (expected vbf, dbr, or eer)");
}

std::string to_string(ProtocolKind kind) {
    switch (kind) {
        case ProtocolKind::Vbf: return "vbf";
        case ProtocolKind::Dbr: return "dbr";
        case ProtocolKind::Eer: return "eer";
    }
    return "?";
}

double vbf_hold_time(double p, double d, double cos_theta, double pipe_radius, double range) {
    const double t_delay = range / kSoundSpeed;
    const double alpha = std::max(0.0, p / pipe_radius + (range - d * cos_theta) / range);
    const double hold = std::sqrt(alpha) * t_delay + (range - d) / kSoundSpeed;
    return std::max(0.0, hold);
}

double dbr_hold_time(double depth_delta, double depth_threshold, double range) {
    const double tau = range / kSoundSpeed;
    // Scaling constant of the linear hold; a zero threshold falls back to
    // 0.8 R so weak-progress forwarders still defer to steep ones.
    const double delta = depth_threshold > 0.0 ? depth_threshold : 0.8 * range;
    return std::max(0.0, (2.0 * tau / delta) * (range - depth_delta));
}

ProtocolDecision vbf_decide(const SensorNode& node, const Packet& packet, const NetworkState& state,
                            double pipe_radius) {
    const double p = distance_to_segment(node.pos, packet.anchor_source_pos, packet.anchor_sink_pos);
    if (p > pipe_radius) return {ProtocolDecision::Action::Drop, 0.0};

    const Position& prev = packet.last_hop_pos;
    const double d = distance(prev, node.pos);
    const double range = state.config.range(node.power_level);

    // cos of the angle at the previous hop between (prev->node) and (prev->sink).
    const Position& sink = packet.anchor_sink_pos;
    const double ax = node.pos.x - prev.x, ay = node.pos.y - prev.y, az = node.pos.z - prev.z;
    const double bx = sink.x - prev.x, by = sink.y - prev.y, bz = sink.z - prev.z;
    const double na = std::sqrt(ax * ax + ay * ay + az * az);
    const double nb = std::sqrt(bx * bx + by * by + bz * bz);
    double cos_theta = 1.0;
    if (na > 0.0 && nb > 0.0)
        cos_theta = std::clamp((ax * bx + ay * by + az * bz) / (na * nb), -1.0, 1.0);

    return {ProtocolDecision::Action::Forward, vbf_hold_time(p, d, cos_theta, pipe_radius, range)};
}

ProtocolDecision dbr_decide(const SensorNode& node, const Packet& packet, const NetworkState& state,
                            double depth_threshold) {
    const double depth_delta = packet.last_hop_pos.z - node.pos.z;
    if (depth_delta < depth_threshold) return {ProtocolDecision::Action::Drop, 0.0};
    const double range = state.config.range(node.power_level);
    return {ProtocolDecision::Action::Forward, dbr_hold_time(depth_delta, depth_threshold, range)};
}

ProtocolDecision on_receive(ProtocolKind kind, const SensorNode& node, const Packet& packet,
                            const NetworkState& state) {
    if (node.is_sink) return {ProtocolDecision::Action::Deliver, 0.0};
    switch (kind) {
        case ProtocolKind::Vbf: return vbf_decide(node, packet, state, state.config.vbf_pipe_radius);
        case ProtocolKind::Dbr: return dbr_decide(node, packet, state, state.config.dbr_depth_threshold);
        case ProtocolKind::Eer: break;
    }
    throw std::logic_error("on_receive: EER packets are source-routed, not broadcast");
}

}  // namespace uwasn
