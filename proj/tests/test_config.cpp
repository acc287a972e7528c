#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>

#include "uwasn/config.hpp"

using namespace uwasn;

TEST_CASE("empty config keeps every default") {
    const ScenarioConfig c = parse_config("");
    CHECK(c.num_nodes == 64);
    CHECK(c.num_sources == 5);
    CHECK(c.region.x_max == 500.0);
    CHECK(c.transmission_range_high == 150.0);
    CHECK(c.transmission_range_low == 80.0);
    CHECK(c.initial_energy == 100.0);
    CHECK(c.bitrate == 10000.0);
    CHECK(c.packet_size == 512);
    CHECK(c.power_toggle_period == 10);
    CHECK(c.channel_mode == ChannelMode::Probabilistic);
    CHECK(c.ga.population_size == 30);
    CHECK(c.ga.mutation_rate == 0.1);
    CHECK(c.seed == 1);
}

TEST_CASE("single override leaves the rest untouched") {
    const ScenarioConfig c = parse_config("num_nodes = 76\n");
    CHECK(c.num_nodes == 76);
    CHECK(c.num_sources == 5);
    CHECK(c.rounds == 100);
}

TEST_CASE("comments, blank lines, and spacing are tolerated") {
    const std::string text =
        "# scenario\n"
        "\n"
        "  rounds=42   # trailing comment\n"
        "channel_mode = deterministic\n"
        "ga_mutation_rate = 0.25\n"
        "seed = 99\n";
    const ScenarioConfig c = parse_config(text);
    CHECK(c.rounds == 42);
    CHECK(c.channel_mode == ChannelMode::Deterministic);
    CHECK(c.ga.mutation_rate == 0.25);
    CHECK(c.seed == 99);
}

TEST_CASE("parse failures name the line") {
    auto message_of = [](const std::string& text) {
        try {
            parse_config(text);
        } catch (const ConfigError& e) {
            return std::string(e.what());
        }
        return std::string();
    };

    CHECK(message_of("num_nodes = banana") .find("line 1") != std::string::npos);
    CHECK(message_of("# a\n# b\nbogus_key = 3\n").find("line 3") != std::string::npos);
    CHECK(message_of("rounds = 5\nrounds = 6\n").find("duplicate") != std::string::npos);
    CHECK(message_of("rounds 5\n").find("key = value") != std::string::npos);
    CHECK(message_of("rounds =\n").find("empty value") != std::string::npos);
    CHECK(message_of("channel_mode = fuzzy\n").find("channel_mode") != std::string::npos);
}

TEST_CASE("validation rejects inconsistent scenarios") {
    ScenarioConfig c;
    CHECK_NOTHROW(validate_config(c));

    SUBCASE("too many sources") {
        c.num_sources = c.num_nodes;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SUBCASE("too few nodes") {
        c.num_nodes = 1;
        c.num_sources = 0;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SUBCASE("inverted ranges") {
        c.transmission_range_low = c.transmission_range_high + 1;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SUBCASE("non-positive region") {
        c.region.z_max = 0;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SUBCASE("mutation rate out of range") {
        c.ga.mutation_rate = 1.5;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
    SUBCASE("tournament larger than population") {
        c.ga.tournament_k = c.ga.population_size + 1;
        CHECK_THROWS_AS(validate_config(c), ConfigError);
    }
}

TEST_CASE("missing config file reports the path") {
    try {
        load_config("/nonexistent/uwasn.conf");
        CHECK(false);
    } catch (const ConfigError& e) {
        CHECK(std::string(e.what()).find("/nonexistent/uwasn.conf") != std::string::npos);
    }
}
