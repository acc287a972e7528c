#include "uwasn/sweep.hpp"

#include <algorithm>
#include <stdexcept>

#if defined(_OPENMP)
#include <omp.h>
#endif

namespace uwasn {

namespace {

struct Cell {
    ProtocolKind protocol;
    int node_count;
    std::uint64_t seed;
};

std::vector<Cell> expand(const SweepSpec& spec) {
    if (spec.protocols.empty()) throw ConfigError("sweep: no protocols selected");
    if (spec.node_counts.empty()) throw ConfigError("sweep: empty node range");
    if (spec.seeds < 1) throw ConfigError("sweep: seeds must be >= 1");
    for (int n : spec.node_counts)
        if (n < 2) throw ConfigError("sweep: node counts must be >= 2");

    // Canonical cell order matches write_sweep's (protocol, num_nodes, seed).
    std::vector<ProtocolKind> protocols = spec.protocols;
    std::sort(protocols.begin(), protocols.end(), [](ProtocolKind a, ProtocolKind b) {
        return to_string(a) < to_string(b);
    });
    protocols.erase(std::unique(protocols.begin(), protocols.end()), protocols.end());

    std::vector<Cell> cells;
    for (ProtocolKind protocol : protocols)
        for (int count : spec.node_counts)
            for (int seed = 1; seed <= spec.seeds; ++seed)
                cells.push_back({protocol, count, static_cast<std::uint64_t>(seed)});
    return cells;
}

RunSummary run_cell(const SweepSpec& spec, const Cell& cell) {
    const ScenarioConfig config = cell_config(spec, cell.node_count, cell.seed);
    Engine engine(config, cell.protocol);
    const RunResult result = engine.run();
    return summarize_run(to_string(cell.protocol), cell.seed, cell.node_count, result.rounds,
                         engine.state().non_sink_count());
}

[[noreturn]] void fail_cell(const Cell& cell, const std::string& why) {
    throw std::runtime_error("sweep cell (protocol=" + to_string(cell.protocol) +
                             ", nodes=" + std::to_string(cell.node_count) +
                             ", seed=" + std::to_string(cell.seed) + ") failed: " + why);
}

}  // namespace

std::vector<int> parse_node_range(const std::string& text) {
    const auto first = text.find(':');
    const auto second = text.find(':', first == std::string::npos ? first : first + 1);
    if (first == std::string::npos || second == std::string::npos)
        throw ConfigError("node range must be START:STOP:STEP, got '" + text + "'");
    int start = 0, stop = 0, step = 0;
    try {
        start = std::stoi(text.substr(0, first));
        stop = std::stoi(text.substr(first + 1, second - first - 1));
        step = std::stoi(text.substr(second + 1));
    } catch (const std::exception&) {
        throw ConfigError("node range must be three integers, got '" + text + "'");
    }
    if (step <= 0) throw ConfigError("node range step must be positive");
    if (stop < start) throw ConfigError("node range stop must be >= start");
    std::vector<int> counts;
    for (int n = start; n <= stop; n += step) counts.push_back(n);
    return counts;
}

ScenarioConfig cell_config(const SweepSpec& spec, int node_count, std::uint64_t seed) {
    ScenarioConfig config = spec.base_config;
    config.num_nodes = node_count;
    config.num_sources = std::min(spec.base_config.num_sources, node_count - 1);
    config.seed = seed;
    return config;
}

std::vector<RunSummary> run_sweep_serial(const SweepSpec& spec) {
    const std::vector<Cell> cells = expand(spec);
    std::vector<RunSummary> summaries;
    summaries.reserve(cells.size());
    for (const Cell& cell : cells) {
        try {
            summaries.push_back(run_cell(spec, cell));
        } catch (const std::exception& e) {
            fail_cell(cell, e.what());
        }
    }
    return summaries;
}

std::vector<RunSummary> run_sweep_parallel(const SweepSpec& spec, int workers) {
    const std::vector<Cell> cells = expand(spec);
    std::vector<RunSummary> summaries(cells.size());
    std::vector<std::string> errors(cells.size());

#if defined(_OPENMP)
    const int threads = std::max(1, workers);
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long i = 0; i < static_cast<long>(cells.size()); ++i) {
        try {
            summaries[static_cast<std::size_t>(i)] = run_cell(spec, cells[static_cast<std::size_t>(i)]);
        } catch (const std::exception& e) {
            errors[static_cast<std::size_t>(i)] = e.what();
        }
    }
#else
    (void)workers;
    for (std::size_t i = 0; i < cells.size(); ++i) {
        try {
            summaries[i] = run_cell(spec, cells[i]);
        } catch (const std::exception& e) {
            errors[i] = e.what();
        }
    }
#endif

    for (std::size_t i = 0; i < cells.size(); ++i)
        if (!errors[i].empty()) fail_cell(cells[i], errors[i]);
    return summaries;
}

std::vector<RunSummary> run_sweep(const SweepSpec& spec, int workers) {
    if (workers <= 1) return run_sweep_serial(spec);
    return run_sweep_parallel(spec, workers);
}

}  // namespace uwasn
