#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string_view>

namespace uwasn {

// Named, seeded random stream. Distinct (seed, label) pairs give independent
// sequences, so adding a consumer of one stream never perturbs another.
// Doubles are built from the top 53 bits of the generator output; we never go
// through std::uniform_real_distribution, whose draws are implementation
// defined.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::string_view label)
        : engine_(mix(seed, label)) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, 1).
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // Uniform integer in [0, n). Rejection sampling keeps it unbiased.
    std::uint64_t uniform_index(std::uint64_t n) {
        if (n <= 1) return 0;
        const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                                    std::numeric_limits<std::uint64_t>::max() % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    bool bernoulli(double p) {
        if (p <= 0.0) return false;
        if (p >= 1.0) return true;
        return uniform() < p;
    }

private:
    static std::uint64_t mix(std::uint64_t seed, std::string_view label) {
        // FNV-1a over the label, folded into the seed, then one splitmix64 step.
        std::uint64_t h = 1469598103934665603ULL;
        for (char c : label) {
            h ^= static_cast<unsigned char>(c);
            h *= 1099511628211ULL;
        }
        std::uint64_t z = seed ^ h;
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    std::mt19937_64 engine_;
};

}  // namespace uwasn
