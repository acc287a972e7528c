#include "uwasn/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace uwasn {

namespace {

std::string fixed6(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", value);
    return buf;
}

std::ofstream open_for_write(const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write file: " + path);
    return out;
}

}  // namespace

double pdr(std::uint64_t delivered, std::uint64_t generated) {
    if (generated == 0) return 0.0;
    return static_cast<double>(delivered) / static_cast<double>(generated);
}

std::optional<int> network_lifetime(const std::vector<RoundMetrics>& rounds, int non_sink_nodes) {
    for (const auto& r : rounds)
        if (r.alive_nodes < non_sink_nodes) return r.round;
    return std::nullopt;
}

RunSummary summarize_run(const std::string& protocol, std::uint64_t seed, int num_nodes,
                         const std::vector<RoundMetrics>& rounds, int non_sink_nodes) {
    RunSummary s;
    s.protocol = protocol;
    s.seed = seed;
    s.num_nodes = num_nodes;
    std::uint64_t generated = 0, delivered = 0;
    double delay_sum = 0.0;
    std::uint64_t delay_count = 0;
    for (const auto& r : rounds) {
        generated += r.generated;
        delivered += r.delivered;
        for (double d : r.delay_samples) {
            delay_sum += d;
            ++delay_count;
        }
    }
    s.pdr = pdr(delivered, generated);
    s.mean_delay = delay_count ? delay_sum / static_cast<double>(delay_count) : 0.0;
    s.lifetime_round = network_lifetime(rounds, non_sink_nodes);
    return s;
}

void write_round_series(const std::string& protocol, std::uint64_t seed,
                        const std::vector<RoundMetrics>& rounds, const std::string& path) {
    auto out = open_for_write(path);
    out << "protocol,seed,round,pdr_cum,delay_mean_s,residual_total_j,alive_nodes\n";

    std::vector<const RoundMetrics*> ordered;
    for (const auto& r : rounds) ordered.push_back(&r);
    std::sort(ordered.begin(), ordered.end(),
              [](const RoundMetrics* a, const RoundMetrics* b) { return a->round < b->round; });

    std::uint64_t generated = 0, delivered = 0;
    for (const RoundMetrics* r : ordered) {
        generated += r->generated;
        delivered += r->delivered;
        double delay_mean = 0.0;
        if (!r->delay_samples.empty()) {
            for (double d : r->delay_samples) delay_mean += d;
            delay_mean /= static_cast<double>(r->delay_samples.size());
        }
        out << protocol << ',' << seed << ',' << r->round << ',' << fixed6(pdr(delivered, generated))
            << ',' << fixed6(delay_mean) << ',' << fixed6(r->residual_total) << ',' << r->alive_nodes
            << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_sweep(std::vector<RunSummary> summaries, const std::string& path) {
    std::sort(summaries.begin(), summaries.end(), [](const RunSummary& a, const RunSummary& b) {
        if (a.protocol != b.protocol) return a.protocol < b.protocol;
        if (a.num_nodes != b.num_nodes) return a.num_nodes < b.num_nodes;
        return a.seed < b.seed;
    });

    auto out = open_for_write(path);
    out << "protocol,seed,num_nodes,pdr,delay_mean_s,lifetime_round\n";
    for (const auto& s : summaries) {
        out << s.protocol << ',' << s.seed << ',' << s.num_nodes << ',' << fixed6(s.pdr) << ','
            << fixed6(s.mean_delay) << ',';
        if (s.lifetime_round) out << *s.lifetime_round;
        out << '\n';
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace uwasn
