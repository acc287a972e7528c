#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace uwasn {

using NodeId = std::uint32_t;

inline constexpr double kSoundSpeed = 1500.0;  // m/s, underwater acoustic

enum class PowerLevel { Low, High };

// z is depth: 0 at the surface, positive downward.
struct Position {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;
};

struct Region {
    double x_max = 500.0;
    double y_max = 500.0;
    double z_max = 500.0;
};

struct SensorNode {
    NodeId id = 0;
    Position pos;
    double energy = 0.0;  // joules; +inf on the sink
    PowerLevel power_level = PowerLevel::High;
    bool is_sink = false;
    bool is_source = false;
    bool alive = true;
};

inline double distance(const Position& a, const Position& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    const double dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

// Distance from p to the segment [a, b]. Degenerate segments collapse to a point.
inline double distance_to_segment(const Position& p, const Position& a, const Position& b) {
    const double abx = b.x - a.x, aby = b.y - a.y, abz = b.z - a.z;
    const double len2 = abx * abx + aby * aby + abz * abz;
    double t = 0.0;
    if (len2 > 0.0) {
        t = ((p.x - a.x) * abx + (p.y - a.y) * aby + (p.z - a.z) * abz) / len2;
        t = std::clamp(t, 0.0, 1.0);
    }
    const Position q{a.x + t * abx, a.y + t * aby, a.z + t * abz};
    return distance(p, q);
}

inline Position clamp_to_region(Position p, const Region& r) {
    p.x = std::clamp(p.x, 0.0, r.x_max);
    p.y = std::clamp(p.y, 0.0, r.y_max);
    p.z = std::clamp(p.z, 0.0, r.z_max);
    return p;
}

}  // namespace uwasn
