#pragma once

#include "uwasn/config.hpp"
#include "uwasn/types.hpp"

namespace uwasn {

struct LinkBudget {
    double distance = 0.0;       // meters
    double attenuation = 0.0;    // dB
    double snr = 0.0;            // dB
    double delivery_prob = 0.0;  // [0,1]
    double prop_delay = 0.0;     // seconds, distance / 1500
    double tx_duration = 0.0;    // seconds
};

struct LinkEnergy {
    double tx = 0.0;  // joules per transmission
    double rx = 0.0;  // joules per reception
};

// Thorp's empirical absorption, dB/km, frequency in kHz. Rejects f <= 0.
double thorp_absorption(double frequency_khz);

// Spreading loss plus absorption, dB. Distances below 1 m clamp to 1 m.
double path_loss(double distance_m, double frequency_khz, double spreading_exponent);

// Per-link acoustic budget at the sender's given power level.
LinkBudget link_budget(const Position& sender, const Position& receiver, PowerLevel level,
                       const ScenarioConfig& config);

// 0 beyond the sender's range; otherwise logistic in SNR (Probabilistic mode)
// or a hard SNR threshold (Deterministic mode, inclusive at the midpoint).
double delivery_probability(const SensorNode& sender, const SensorNode& receiver,
                            const ScenarioConfig& config);

LinkEnergy link_energy(PowerLevel sender_level, const ScenarioConfig& config);

}  // namespace uwasn
