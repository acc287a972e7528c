#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "uwasn/config.hpp"
#include "uwasn/world.hpp"

namespace uwasn::test {

// Deterministic-channel scenario with drift and toggling disabled: the
// default fixture for engine-level tests that need exact arithmetic.
inline ScenarioConfig quiet_config() {
    ScenarioConfig config;
    config.channel_mode = ChannelMode::Deterministic;
    config.drift_horizontal = 0.0;
    config.drift_vertical = 0.0;
    config.power_toggle_period = 1000000;
    return config;
}

// Hand-built topology: node 0 is the sink at `sink_pos` (z must be 0), the
// rest are sensors at the given positions. `sources` flags by node id.
inline NetworkState make_state(const ScenarioConfig& config, const Position& sink_pos,
                               const std::vector<Position>& sensor_positions,
                               const std::vector<NodeId>& sources) {
    NetworkState state;
    state.config = config;
    state.config.num_nodes = static_cast<int>(sensor_positions.size()) + 1;
    state.config.num_sources = static_cast<int>(sources.size());

    SensorNode sink;
    sink.id = 0;
    sink.pos = sink_pos;
    sink.energy = std::numeric_limits<double>::infinity();
    sink.is_sink = true;
    state.nodes.push_back(sink);

    for (std::size_t i = 0; i < sensor_positions.size(); ++i) {
        SensorNode n;
        n.id = static_cast<NodeId>(i + 1);
        n.pos = sensor_positions[i];
        n.energy = config.initial_energy;
        n.power_level = PowerLevel::High;
        n.alive = true;
        state.nodes.push_back(n);
    }
    for (NodeId id : sources) state.nodes[id].is_source = true;
    return state;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

}  // namespace uwasn::test
