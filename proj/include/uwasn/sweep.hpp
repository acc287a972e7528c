#pragma once

#include <string>
#include <vector>

#include "uwasn/engine.hpp"
#include "uwasn/metrics.hpp"
#include "uwasn/routing.hpp"

namespace uwasn {

// Experiment grid: protocols x node counts x seeds 1..seeds. Every protocol
// sees the identical deployment and drift for a given (node_count, seed)
// because those streams never depend on the protocol.
struct SweepSpec {
    std::vector<ProtocolKind> protocols;
    std::vector<int> node_counts;
    int seeds = 1;
    ScenarioConfig base_config;
};

// Parses "start:stop:step" into the inclusive arithmetic range.
std::vector<int> parse_node_range(const std::string& text);

// Scenario for one sweep cell: base config with num_nodes, seed, and
// num_sources clamped below the node count so small cells stay valid.
ScenarioConfig cell_config(const SweepSpec& spec, int node_count, std::uint64_t seed);

// Reference implementation: runs cells one by one in canonical
// (protocol, node_count, seed) order.
std::vector<RunSummary> run_sweep_serial(const SweepSpec& spec);

// OpenMP over cells; each cell is an isolated engine instance and results are
// merged by cell index, so output is byte-identical to the serial path.
std::vector<RunSummary> run_sweep_parallel(const SweepSpec& spec, int workers);

// workers <= 1 uses the serial reference.
std::vector<RunSummary> run_sweep(const SweepSpec& spec, int workers);

}  // namespace uwasn
