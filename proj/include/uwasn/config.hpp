#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include "uwasn/types.hpp"

namespace uwasn {

enum class ChannelMode { Probabilistic, Deterministic };
enum class SelectionMode { TopTwo, Tournament };

struct GaConfig {
    int population_size = 30;
    int max_generations = 200;
    int convergence_window = 20;
    double mutation_rate = 0.1;
    double weight_energy = 1.0;    // cost per joule of path transmit energy
    double weight_hops = 0.1;      // cost per hop
    double weight_balance = 0.05;  // bottleneck-residual reciprocal term
    double epsilon = 1e-6;         // joules, guards the reciprocal
    SelectionMode selection_mode = SelectionMode::TopTwo;
    int tournament_k = 3;
};

struct ScenarioConfig {
    Region region;
    int num_nodes = 64;
    int num_sources = 5;
    double transmission_range_high = 150.0;  // meters
    double transmission_range_low = 80.0;
    double initial_energy = 100.0;  // joules
    double power_watts_high = 2.0;
    double power_watts_low = 0.5;
    double power_watts_rx = 0.1;
    int power_toggle_period = 10;  // rounds
    double bitrate = 10000.0;      // bits/s
    int packet_size = 512;         // bytes
    double frequency = 20.0;       // kHz
    double spreading_exponent = 1.5;
    double noise_level = 30.0;        // dB
    double source_level_high = 80.0;  // dB
    double source_level_low = 77.0;
    double snr_midpoint = 10.0;  // dB
    double snr_slope = 2.0;      // dB
    ChannelMode channel_mode = ChannelMode::Probabilistic;
    double drift_horizontal = 5.0;  // meters/round
    double drift_vertical = 1.0;
    int rounds = 100;
    std::uint64_t seed = 1;
    GaConfig ga;
    double vbf_pipe_radius = 250.0;    // meters
    double dbr_depth_threshold = 0.0;  // meters

    double tx_duration() const { return 8.0 * packet_size / bitrate; }
    double range(PowerLevel level) const {
        return level == PowerLevel::High ? transmission_range_high : transmission_range_low;
    }
    double power_watts(PowerLevel level) const {
        return level == PowerLevel::High ? power_watts_high : power_watts_low;
    }
    double source_level(PowerLevel level) const {
        return level == PowerLevel::High ? source_level_high : source_level_low;
    }
    // A node is alive while it can still afford one Low-power transmission.
    double min_tx_energy() const { return power_watts_low * tx_duration(); }
};

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Parses the flat `key = value` scenario format. Unset keys keep defaults;
// unknown keys, duplicate keys, and unparseable values are hard errors naming
// the 1-based line number. '#' starts a comment.
ScenarioConfig parse_config(const std::string& text);

// Reads the file and parses it; throws ConfigError with the path on I/O failure.
ScenarioConfig load_config(const std::string& path);

// Cross-field invariant checks (num_sources < num_nodes, range ordering,
// positive physical quantities). Throws ConfigError.
void validate_config(const ScenarioConfig& config);

std::string to_string(ChannelMode mode);
std::string to_string(SelectionMode mode);

}  // namespace uwasn
