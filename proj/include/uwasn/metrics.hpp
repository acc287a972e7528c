#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace uwasn {

struct RoundMetrics {
    int round = 0;
    int generated = 0;
    int delivered = 0;
    std::vector<double> delay_samples;  // seconds, one per delivered packet
    double residual_total = 0.0;        // joules over non-sink nodes, end of round
    int alive_nodes = 0;                // non-sink nodes alive at end of round
};

struct RunSummary {
    std::string protocol;
    std::uint64_t seed = 0;
    int num_nodes = 0;
    double pdr = 0.0;
    double mean_delay = 0.0;  // seconds over all delivered packets; 0 when none
    std::optional<int> lifetime_round;
};

// delivered / generated; 0 when nothing was generated.
double pdr(std::uint64_t delivered, std::uint64_t generated);

// First round at which any non-sink node is dead, i.e. the alive count first
// drops below the non-sink total. nullopt when every node survives.
std::optional<int> network_lifetime(const std::vector<RoundMetrics>& rounds, int non_sink_nodes);

RunSummary summarize_run(const std::string& protocol, std::uint64_t seed, int num_nodes,
                         const std::vector<RoundMetrics>& rounds, int non_sink_nodes);

// CSV, header `protocol,seed,round,pdr_cum,delay_mean_s,residual_total_j,alive_nodes`,
// one row per round sorted by round, floats at 6 decimal places.
void write_round_series(const std::string& protocol, std::uint64_t seed,
                        const std::vector<RoundMetrics>& rounds, const std::string& path);

// CSV, header `protocol,seed,num_nodes,pdr,delay_mean_s,lifetime_round`, rows
// sorted by (protocol, num_nodes, seed); lifetime_round empty when absent.
void write_sweep(std::vector<RunSummary> summaries, const std::string& path);

}  // namespace uwasn
