// Compares the serial reference sweep against the OpenMP path on a desk-scale
// grid and checks that both produce identical summaries.

#include <chrono>
#include <cstdio>
#include <thread>

#include "uwasn/sweep.hpp"

using namespace uwasn;
using Clock = std::chrono::steady_clock;

namespace {

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

bool same(const std::vector<RunSummary>& a, const std::vector<RunSummary>& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].protocol != b[i].protocol || a[i].seed != b[i].seed ||
            a[i].num_nodes != b[i].num_nodes || a[i].pdr != b[i].pdr ||
            a[i].mean_delay != b[i].mean_delay || a[i].lifetime_round != b[i].lifetime_round)
            return false;
    }
    return true;
}

}  // namespace

int main(int argc, char** argv) {
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    if (argc > 1) workers = std::atoi(argv[1]);
    if (workers < 2) workers = 2;

    SweepSpec spec;
    spec.protocols = {ProtocolKind::Vbf, ProtocolKind::Dbr, ProtocolKind::Eer};
    spec.node_counts = {16, 28, 40};
    spec.seeds = 4;
    spec.base_config.rounds = 30;

    std::printf("sweep grid: 3 protocols x %zu densities x %d seeds, %d rounds\n",
                spec.node_counts.size(), spec.seeds, spec.base_config.rounds);

    auto t0 = Clock::now();
    const auto serial = run_sweep_serial(spec);
    const double serial_s = seconds_since(t0);
    std::printf("serial reference: %8.3f s\n", serial_s);

    t0 = Clock::now();
    const auto parallel = run_sweep_parallel(spec, workers);
    const double parallel_s = seconds_since(t0);
    std::printf("openmp (%d workers): %8.3f s  speedup %.2fx\n", workers, parallel_s,
                serial_s / parallel_s);

    if (!same(serial, parallel)) {
        std::printf("MISMATCH: parallel summaries differ from serial reference\n");
        return 1;
    }
    std::printf("summaries identical across both paths (%zu cells)\n", serial.size());
    return 0;
}
