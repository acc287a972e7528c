#include "uwasn/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace uwasn {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

[[noreturn]] void parse_fail(int line, const std::string& reason) {
    throw ConfigError("config line " + std::to_string(line) + ": " + reason);
}

double parse_double(const std::string& value, int line) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') parse_fail(line, "expected a number, got '" + value + "'");
    return v;
}

int parse_int(const std::string& value, int line) {
    int v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        parse_fail(line, "expected an integer, got '" + value + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& value, int line) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
    if (ec != std::errc() || ptr != value.data() + value.size())
        parse_fail(line, "expected an unsigned integer, got '" + value + "'");
    return v;
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
    ScenarioConfig config;

    using Setter = std::function<void(ScenarioConfig&, const std::string&, int)>;
    static const std::map<std::string, Setter> setters = {
        {"region_x_max", [](ScenarioConfig& c, const std::string& v, int l) { c.region.x_max = parse_double(v, l); }},
        {"region_y_max", [](ScenarioConfig& c, const std::string& v, int l) { c.region.y_max = parse_double(v, l); }},
        {"region_z_max", [](ScenarioConfig& c, const std::string& v, int l) { c.region.z_max = parse_double(v, l); }},
        {"num_nodes", [](ScenarioConfig& c, const std::string& v, int l) { c.num_nodes = parse_int(v, l); }},
        {"num_sources", [](ScenarioConfig& c, const std::string& v, int l) { c.num_sources = parse_int(v, l); }},
        {"transmission_range_high", [](ScenarioConfig& c, const std::string& v, int l) { c.transmission_range_high = parse_double(v, l); }},
        {"transmission_range_low", [](ScenarioConfig& c, const std::string& v, int l) { c.transmission_range_low = parse_double(v, l); }},
        {"initial_energy", [](ScenarioConfig& c, const std::string& v, int l) { c.initial_energy = parse_double(v, l); }},
        {"power_watts_high", [](ScenarioConfig& c, const std::string& v, int l) { c.power_watts_high = parse_double(v, l); }},
        {"power_watts_low", [](ScenarioConfig& c, const std::string& v, int l) { c.power_watts_low = parse_double(v, l); }},
        {"power_watts_rx", [](ScenarioConfig& c, const std::string& v, int l) { c.power_watts_rx = parse_double(v, l); }},
        {"power_toggle_period", [](ScenarioConfig& c, const std::string& v, int l) { c.power_toggle_period = parse_int(v, l); }},
        {"bitrate", [](ScenarioConfig& c, const std::string& v, int l) { c.bitrate = parse_double(v, l); }},
        {"packet_size", [](ScenarioConfig& c, const std::string& v, int l) { c.packet_size = parse_int(v, l); }},
        {"frequency", [](ScenarioConfig& c, const std::string& v, int l) { c.frequency = parse_double(v, l); }},
        {"spreading_exponent", [](ScenarioConfig& c, const std::string& v, int l) { c.spreading_exponent = parse_double(v, l); }},
        {"noise_level", [](ScenarioConfig& c, const std::string& v, int l) { c.noise_level = parse_double(v, l); }},
        {"source_level_high", [](ScenarioConfig& c, const std::string& v, int l) { c.source_level_high = parse_double(v, l); }},
        {"source_level_low", [](ScenarioConfig& c, const std::string& v, int l) { c.source_level_low = parse_double(v, l); }},
        {"snr_midpoint", [](ScenarioConfig& c, const std::string& v, int l) { c.snr_midpoint = parse_double(v, l); }},
        {"snr_slope", [](ScenarioConfig& c, const std::string& v, int l) { c.snr_slope = parse_double(v, l); }},
        {"channel_mode",
         [](ScenarioConfig& c, const std::string& v, int l) {
             if (v == "probabilistic") c.channel_mode = ChannelMode::Probabilistic;
             else if (v == "deterministic") c.channel_mode = ChannelMode::Deterministic;
             else parse_fail(l, "channel_mode must be 'probabilistic' or 'deterministic', got '" + v + "'");
         }},
        {"drift_horizontal", [](ScenarioConfig& c, const std::string& v, int l) { c.drift_horizontal = parse_double(v, l); }},
        {"drift_vertical", [](ScenarioConfig& c, const std::string& v, int l) { c.drift_vertical = parse_double(v, l); }},
        {"rounds", [](ScenarioConfig& c, const std::string& v, int l) { c.rounds = parse_int(v, l); }},
        {"seed", [](ScenarioConfig& c, const std::string& v, int l) { c.seed = parse_u64(v, l); }},
        {"ga_population_size", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.population_size = parse_int(v, l); }},
        {"ga_max_generations", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.max_generations = parse_int(v, l); }},
        {"ga_convergence_window", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.convergence_window = parse_int(v, l); }},
        {"ga_mutation_rate", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.mutation_rate = parse_double(v, l); }},
        {"ga_weight_energy", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.weight_energy = parse_double(v, l); }},
        {"ga_weight_hops", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.weight_hops = parse_double(v, l); }},
        {"ga_weight_balance", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.weight_balance = parse_double(v, l); }},
        {"ga_epsilon", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.epsilon = parse_double(v, l); }},
        {"ga_selection_mode",
         [](ScenarioConfig& c, const std::string& v, int l) {
             if (v == "top_two") c.ga.selection_mode = SelectionMode::TopTwo;
             else if (v == "tournament") c.ga.selection_mode = SelectionMode::Tournament;
             else parse_fail(l, "ga_selection_mode must be 'top_two' or 'tournament', got '" + v + "'");
         }},
        {"ga_tournament_k", [](ScenarioConfig& c, const std::string& v, int l) { c.ga.tournament_k = parse_int(v, l); }},
        {"vbf_pipe_radius", [](ScenarioConfig& c, const std::string& v, int l) { c.vbf_pipe_radius = parse_double(v, l); }},
        {"dbr_depth_threshold", [](ScenarioConfig& c, const std::string& v, int l) { c.dbr_depth_threshold = parse_double(v, l); }},
    };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) parse_fail(line_no, "expected 'key = value'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) parse_fail(line_no, "empty key");
        const auto it = setters.find(key);
        if (it == setters.end()) parse_fail(line_no, "unknown key '" + key + "'");
        if (!seen.insert(key).second) parse_fail(line_no, "duplicate key '" + key + "'");
        if (value.empty()) parse_fail(line_no, "empty value for '" + key + "'");
        it->second(config, value, line_no);
    }
    return config;
}

ScenarioConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

void validate_config(const ScenarioConfig& c) {
    auto require = [](bool ok, const std::string& what) {
        if (!ok) throw ConfigError(what);
    };
    require(c.region.x_max > 0 && c.region.y_max > 0 && c.region.z_max > 0,
            "region dimensions must be strictly positive");
    require(c.num_nodes >= 2, "num_nodes must be at least 2");
    require(c.num_sources >= 1 && c.num_sources < c.num_nodes,
            "num_sources must satisfy 1 <= num_sources < num_nodes");
    require(c.transmission_range_low > 0 && c.transmission_range_high > 0,
            "transmission ranges must be positive");
    require(c.transmission_range_low <= c.transmission_range_high,
            "transmission_range_low must not exceed transmission_range_high");
    require(c.initial_energy > 0, "initial_energy must be positive");
    require(c.power_watts_high > 0 && c.power_watts_low > 0 && c.power_watts_rx > 0,
            "power draws must be positive");
    require(c.power_toggle_period >= 1, "power_toggle_period must be at least 1");
    require(c.bitrate > 0, "bitrate must be positive");
    require(c.packet_size > 0, "packet_size must be positive");
    require(c.frequency > 0, "frequency must be positive");
    require(c.spreading_exponent > 0, "spreading_exponent must be positive");
    require(c.snr_slope > 0, "snr_slope must be positive");
    require(c.drift_horizontal >= 0 && c.drift_vertical >= 0, "drift magnitudes must be non-negative");
    require(c.rounds >= 0, "rounds must be non-negative");
    require(c.vbf_pipe_radius > 0, "vbf_pipe_radius must be positive");
    require(c.dbr_depth_threshold >= 0, "dbr_depth_threshold must be non-negative");
    require(c.ga.population_size >= 2, "ga_population_size must be at least 2");
    require(c.ga.max_generations >= 1, "ga_max_generations must be at least 1");
    require(c.ga.convergence_window >= 1, "ga_convergence_window must be at least 1");
    require(c.ga.mutation_rate >= 0 && c.ga.mutation_rate <= 1, "ga_mutation_rate must be in [0,1]");
    require(c.ga.weight_energy >= 0 && c.ga.weight_hops >= 0 && c.ga.weight_balance >= 0,
            "ga weights must be non-negative");
    require(c.ga.epsilon > 0, "ga_epsilon must be positive");
    require(c.ga.tournament_k >= 1 && c.ga.tournament_k <= c.ga.population_size,
            "ga_tournament_k must be in [1, ga_population_size]");
}

std::string to_string(ChannelMode mode) {
    return mode == ChannelMode::Probabilistic ? "probabilistic" : "deterministic";
}

std::string to_string(SelectionMode mode) {
    return mode == SelectionMode::TopTwo ? "top_two" : "tournament";
}

}  // namespace uwasn
