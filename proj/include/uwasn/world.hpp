#pragma once

#include <vector>

#include "uwasn/config.hpp"
#include "uwasn/rng.hpp"
#include "uwasn/types.hpp"

namespace uwasn {

// Full network state of one simulation instance. Node ids are dense and equal
// to their index in `nodes`; node 0 is the sink. `total_debited` accumulates
// every joule actually drained, so initial_energy * non_sink_count ==
// residual_total() + total_debited holds throughout a run.
struct NetworkState {
    ScenarioConfig config;
    std::vector<SensorNode> nodes;
    double total_debited = 0.0;

    static constexpr NodeId kSinkId = 0;

    const SensorNode& sink() const { return nodes[kSinkId]; }
    const SensorNode& node(NodeId id) const { return nodes[id]; }
    SensorNode& node(NodeId id) { return nodes[id]; }
    int non_sink_count() const { return static_cast<int>(nodes.size()) - 1; }

    // Sum of residual energy over non-sink nodes, joules.
    double residual_total() const;
    int alive_count() const;  // non-sink nodes still alive
    std::vector<NodeId> source_ids() const;
};

// Random deployment: sink at the surface center with infinite energy, sensors
// i.i.d. uniform in the region, the num_sources deepest sensors flagged as
// sources (ties by ascending id). Everyone starts at High power with
// initial_energy. Rejects num_nodes < 2.
NetworkState deploy(const ScenarioConfig& config, RngStream& rng);

// Per-round drift: each non-sink node moves by a uniform vector in a
// horizontal disk of radius drift_horizontal plus a vertical offset uniform in
// +-drift_vertical, then clamps to the region. The sink never moves. Dead
// nodes keep drifting, which keeps the draw pattern identical across
// protocols on paired seeds.
void apply_mobility(NetworkState& state, RngStream& rng);

// Flips every non-sink node's power level when round is a multiple of
// power_toggle_period; all nodes flip together.
void toggle_power_levels(NetworkState& state, int round);

// Saturating energy drain; recomputes the alive flag. No-op on the sink.
void debit_energy(NetworkState& state, NodeId id, double amount);

}  // namespace uwasn
