#include "uwasn/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace uwasn {

double NetworkState::residual_total() const {
    double total = 0.0;
    for (const auto& n : nodes)
        if (!n.is_sink) total += n.energy;
    return total;
}

int NetworkState::alive_count() const {
    int count = 0;
    for (const auto& n : nodes)
        if (!n.is_sink && n.alive) ++count;
    return count;
}

std::vector<NodeId> NetworkState::source_ids() const {
    std::vector<NodeId> ids;
    for (const auto& n : nodes)
        if (n.is_source) ids.push_back(n.id);
    return ids;
}

NetworkState deploy(const ScenarioConfig& config, RngStream& rng) {
    validate_config(config);

    NetworkState state;
    state.config = config;
    state.nodes.resize(config.num_nodes);

    SensorNode& sink = state.nodes[NetworkState::kSinkId];
    sink.id = NetworkState::kSinkId;
    sink.pos = {config.region.x_max / 2.0, config.region.y_max / 2.0, 0.0};
    sink.energy = std::numeric_limits<double>::infinity();
    sink.is_sink = true;
    sink.alive = true;

    for (NodeId id = 1; id < state.nodes.size(); ++id) {
        SensorNode& n = state.nodes[id];
        n.id = id;
        n.pos.x = rng.uniform(0.0, config.region.x_max);
        n.pos.y = rng.uniform(0.0, config.region.y_max);
        n.pos.z = rng.uniform(0.0, config.region.z_max);
        n.energy = config.initial_energy;
        n.power_level = PowerLevel::High;
        n.alive = n.energy >= config.min_tx_energy();
    }

    // Sources: the num_sources deepest sensors, ties by ascending id.
    std::vector<NodeId> order;
    for (NodeId id = 1; id < state.nodes.size(); ++id) order.push_back(id);
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        if (state.nodes[a].pos.z != state.nodes[b].pos.z)
            return state.nodes[a].pos.z > state.nodes[b].pos.z;
        return a < b;
    });
    const int n_sources = std::min<int>(config.num_sources, static_cast<int>(order.size()));
    for (int i = 0; i < n_sources; ++i) state.nodes[order[i]].is_source = true;

    return state;
}

void apply_mobility(NetworkState& state, RngStream& rng) {
    const double dh = state.config.drift_horizontal;
    const double dv = state.config.drift_vertical;
    for (auto& n : state.nodes) {
        if (n.is_sink) continue;
        const double angle = rng.uniform(0.0, 2.0 * std::numbers::pi);
        const double radius = dh * std::sqrt(rng.uniform());
        const double dz = rng.uniform(-dv, dv);
        n.pos.x += radius * std::cos(angle);
        n.pos.y += radius * std::sin(angle);
        n.pos.z += dz;
        n.pos = clamp_to_region(n.pos, state.config.region);
    }
}

void toggle_power_levels(NetworkState& state, int round) {
    if (round < 1) throw std::invalid_argument("toggle_power_levels: round must be >= 1");
    if (round % state.config.power_toggle_period != 0) return;
    for (auto& n : state.nodes) {
        if (n.is_sink) continue;
        n.power_level = n.power_level == PowerLevel::High ? PowerLevel::Low : PowerLevel::High;
    }
}

void debit_energy(NetworkState& state, NodeId id, double amount) {
    SensorNode& n = state.nodes[id];
    if (n.is_sink || amount <= 0.0) return;
    const double drained = std::min(n.energy, amount);
    n.energy -= drained;
    state.total_debited += drained;
    n.alive = n.energy >= state.config.min_tx_energy();
}

}  // namespace uwasn
