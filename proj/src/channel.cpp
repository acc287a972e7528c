#include "uwasn/channel.hpp"

#include <cmath>
#include <stdexcept>

namespace uwasn {

double thorp_absorption(double frequency_khz) {
    if (frequency_khz <= 0.0) throw std::invalid_argument("thorp_absorption: frequency must be positive");
    const double f2 = frequency_khz * frequency_khz;
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double path_loss(double distance_m, double frequency_khz, double spreading_exponent) {
    const double d = std::max(distance_m, 1.0);
    return spreading_exponent * 10.0 * std::log10(d) + thorp_absorption(frequency_khz) * (d / 1000.0);
}

LinkBudget link_budget(const Position& sender, const Position& receiver, PowerLevel level,
                       const ScenarioConfig& config) {
    LinkBudget budget;
    budget.distance = distance(sender, receiver);
    budget.attenuation = path_loss(budget.distance, config.frequency, config.spreading_exponent);
    budget.snr = config.source_level(level) - budget.attenuation - config.noise_level;
    budget.prop_delay = budget.distance / kSoundSpeed;
    budget.tx_duration = config.tx_duration();
    if (budget.distance > config.range(level)) {
        budget.delivery_prob = 0.0;
    } else if (config.channel_mode == ChannelMode::Deterministic) {
        budget.delivery_prob = budget.snr >= config.snr_midpoint ? 1.0 : 0.0;
    } else {
        budget.delivery_prob = 1.0 / (1.0 + std::exp(-(budget.snr - config.snr_midpoint) / config.snr_slope));
    }
    return budget;
}

double delivery_probability(const SensorNode& sender, const SensorNode& receiver,
                            const ScenarioConfig& config) {
    return link_budget(sender.pos, receiver.pos, sender.power_level, config).delivery_prob;
}

LinkEnergy link_energy(PowerLevel sender_level, const ScenarioConfig& config) {
    const double t = config.tx_duration();
    return {config.power_watts(sender_level) * t, config.power_watts_rx * t};
}

}  // namespace uwasn
