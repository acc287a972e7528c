#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>

#include "uwasn/engine.hpp"
#include "uwasn/ga.hpp"
#include "uwasn/metrics.hpp"
#include "uwasn/sweep.hpp"

namespace fs = std::filesystem;
using namespace uwasn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;    // bad flags or config
constexpr int kExitRuntime = 2;  // simulation/runtime failure

ScenarioConfig load_or_default(const std::string& config_path) {
    ScenarioConfig config;
    if (!config_path.empty()) config = load_config(config_path);
    validate_config(config);
    return config;
}

int default_workers() {
    if (const char* env = std::getenv("UWASN_SIM_WORKERS")) {
        const int v = std::atoi(env);
        if (v >= 1) return v;
    }
#if defined(_OPENMP)
    return std::max(1u, std::thread::hardware_concurrency());
#else
    return 1;
#endif
}

void apply_overrides(ScenarioConfig& config, const std::optional<std::uint64_t>& seed,
                     const std::optional<int>& rounds) {
    if (seed) config.seed = *seed;
    if (rounds) config.rounds = *rounds;
    validate_config(config);
}

int cmd_run(const std::string& config_path, const std::string& protocol_name,
            const std::optional<std::uint64_t>& seed, const std::optional<int>& rounds,
            const std::string& out_dir) {
    ScenarioConfig config = load_or_default(config_path);
    apply_overrides(config, seed, rounds);
    const ProtocolKind protocol = protocol_from_name(protocol_name);

    const RunResult result = run_simulation(config, protocol);
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) /
                              ("rounds_" + to_string(protocol) + "_" + std::to_string(config.seed) +
                               ".csv"))
                                 .string();
    write_round_series(to_string(protocol), config.seed, result.rounds, path);
    std::cout << path << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::string& protocols_csv,
              const std::string& nodes_range, int seeds, const std::optional<int>& rounds,
              const std::string& out_dir, int workers) {
    SweepSpec spec;
    spec.base_config = load_or_default(config_path);
    if (rounds) spec.base_config.rounds = *rounds;
    spec.node_counts = parse_node_range(nodes_range);
    spec.seeds = seeds;

    std::stringstream names(protocols_csv);
    std::string name;
    while (std::getline(names, name, ',')) {
        if (!name.empty()) spec.protocols.push_back(protocol_from_name(name));
    }

    const auto summaries = run_sweep(spec, workers);
    fs::create_directories(out_dir);
    const std::string path = (fs::path(out_dir) / "sweep.csv").string();
    write_sweep(summaries, path);
    std::cout << path << "\n";
    return kExitOk;
}

int cmd_ga_trace(const std::string& config_path, const std::optional<std::uint64_t>& seed,
                 const std::string& out_dir) {
    ScenarioConfig config = load_or_default(config_path);
    apply_overrides(config, seed, std::nullopt);

    RngStream deploy_rng(config.seed, "deployment");
    const NetworkState state = deploy(config, deploy_rng);

    // Deepest source, ties by ascending id.
    NodeId source = 0;
    double deepest = -1.0;
    for (const auto& n : state.nodes) {
        if (n.is_source && n.pos.z > deepest) {
            deepest = n.pos.z;
            source = n.id;
        }
    }

    RngStream ga_rng(config.seed, "ga");
    std::vector<GenerationStats> trace;
    evolve(source, state, ga_rng, &trace);

    fs::create_directories(out_dir);
    const std::string path =
        (fs::path(out_dir) / ("ga_trace_" + std::to_string(config.seed) + ".csv")).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    out << "generation,best_cost,mean_cost\n";
    char line[128];
    for (const auto& g : trace) {
        std::snprintf(line, sizeof(line), "%d,%.6f,%.6f\n", g.generation, g.best_cost, g.mean_cost);
        out << line;
    }
    std::cout << path << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    const ScenarioConfig config = load_or_default(config_path);
    std::cout << "ok: " << config.num_nodes << " nodes, " << config.num_sources << " sources, "
              << config.rounds << " rounds, channel " << to_string(config.channel_mode) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Underwater acoustic sensor network routing simulator"};
    app.require_subcommand(1);

    std::string config_path;
    std::string protocol = "eer";
    std::string protocols_csv = "vbf,dbr,eer";
    std::string nodes_range = "4:76:8";
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    std::optional<int> rounds;
    int seeds = 30;
    int workers = default_workers();

    auto* run = app.add_subcommand("run", "Run one simulation and write its round series");
    run->add_option("--config", config_path, "Scenario config file");
    run->add_option("--protocol", protocol, "Routing protocol: vbf, dbr, or eer")->required();
    run->add_option("--seed", seed, "Seed override");
    run->add_option("--rounds", rounds, "Round-count override");
    run->add_option("--out", out_dir, "Output directory");

    auto* sweep = app.add_subcommand("sweep", "Run a protocol x density x seed grid");
    sweep->add_option("--config", config_path, "Scenario config file");
    sweep->add_option("--protocols", protocols_csv, "Comma-separated protocol list");
    sweep->add_option("--nodes", nodes_range, "Node counts as START:STOP:STEP");
    sweep->add_option("--seeds", seeds, "Seeds 1..N per cell");
    sweep->add_option("--rounds", rounds, "Round-count override");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--workers", workers, "Concurrent cells (default UWASN_SIM_WORKERS or cores)");

    auto* trace = app.add_subcommand("ga-trace", "Dump per-generation GA convergence for one source");
    trace->add_option("--config", config_path, "Scenario config file");
    trace->add_option("--seed", seed, "Seed override");
    trace->add_option("--out", out_dir, "Output directory");

    auto* validate = app.add_subcommand("validate-config", "Parse and validate a config file");
    validate->add_option("--config", config_path, "Scenario config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (run->parsed()) return cmd_run(config_path, protocol, seed, rounds, out_dir);
        if (sweep->parsed())
            return cmd_sweep(config_path, protocols_csv, nodes_range, seeds, rounds, out_dir, workers);
        if (trace->parsed()) return cmd_ga_trace(config_path, seed, out_dir);
        if (validate->parsed()) return cmd_validate(config_path);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const UnreachableError& e) {
        std::cerr << "unreachable: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitUsage;
}
