#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "helpers.hpp"
#include "uwasn/sweep.hpp"

using namespace uwasn;
using uwasn::test::quiet_config;
using uwasn::test::read_file;

namespace {

SweepSpec small_spec() {
    SweepSpec spec;
    spec.protocols = {ProtocolKind::Vbf, ProtocolKind::Dbr, ProtocolKind::Eer};
    spec.node_counts = {8, 14};
    spec.seeds = 2;
    spec.base_config = quiet_config();
    spec.base_config.rounds = 3;
    return spec;
}

std::string temp_path(const std::string& name) {
    return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("node range parsing") {
    CHECK(parse_node_range("4:76:8") ==
          std::vector<int>{4, 12, 20, 28, 36, 44, 52, 60, 68, 76});
    CHECK(parse_node_range("4:4:1") == std::vector<int>{4});
    CHECK(parse_node_range("20:76:8") == std::vector<int>{20, 28, 36, 44, 52, 60, 68, 76});
    CHECK_THROWS_AS(parse_node_range("10"), ConfigError);
    CHECK_THROWS_AS(parse_node_range("1:5:0"), ConfigError);
    CHECK_THROWS_AS(parse_node_range("5:1:1"), ConfigError);
    CHECK_THROWS_AS(parse_node_range("a:b:c"), ConfigError);
}

TEST_CASE("cell config clamps sources below the node count") {
    SweepSpec spec = small_spec();
    spec.base_config.num_sources = 5;
    const ScenarioConfig c4 = cell_config(spec, 4, 9);
    CHECK(c4.num_nodes == 4);
    CHECK(c4.num_sources == 3);
    CHECK(c4.seed == 9);
    const ScenarioConfig c20 = cell_config(spec, 20, 2);
    CHECK(c20.num_sources == 5);
}

TEST_CASE("one-cell sweep gives one data row") {
    SweepSpec spec = small_spec();
    spec.protocols = {ProtocolKind::Vbf};
    spec.node_counts = {4};
    spec.seeds = 1;
    const auto summaries = run_sweep_serial(spec);
    REQUIRE(summaries.size() == 1);
    CHECK(summaries[0].protocol == "vbf");
    CHECK(summaries[0].num_nodes == 4);
    CHECK(summaries[0].seed == 1);
}

TEST_CASE("paired topology: identical deployments across protocols") {
    SweepSpec spec = small_spec();
    for (int count : spec.node_counts) {
        for (std::uint64_t seed = 1; seed <= 2; ++seed) {
            const ScenarioConfig config = cell_config(spec, count, seed);
            std::vector<std::vector<Position>> deployments;
            for (ProtocolKind protocol : spec.protocols) {
                Engine engine(config, protocol);
                std::vector<Position> positions;
                for (const auto& n : engine.state().nodes) positions.push_back(n.pos);
                deployments.push_back(std::move(positions));
            }
            for (std::size_t p = 1; p < deployments.size(); ++p) {
                REQUIRE(deployments[p].size() == deployments[0].size());
                for (std::size_t i = 0; i < deployments[p].size(); ++i) {
                    CHECK(deployments[p][i].x == deployments[0][i].x);
                    CHECK(deployments[p][i].y == deployments[0][i].y);
                    CHECK(deployments[p][i].z == deployments[0][i].z);
                }
            }
        }
    }
}

TEST_CASE("parallel sweep output is byte-identical to the serial reference") {
    const SweepSpec spec = small_spec();
    const auto serial = run_sweep_serial(spec);
    const auto parallel = run_sweep_parallel(spec, 4);

    const std::string serial_path = temp_path("uwasn_sweep_serial.csv");
    const std::string parallel_path = temp_path("uwasn_sweep_parallel.csv");
    write_sweep(serial, serial_path);
    write_sweep(parallel, parallel_path);
    CHECK(read_file(serial_path) == read_file(parallel_path));
    CHECK(read_file(serial_path).size() > 100);
    std::filesystem::remove(serial_path);
    std::filesystem::remove(parallel_path);
}

TEST_CASE("protocol order in the spec does not change the output") {
    SweepSpec forward = small_spec();
    SweepSpec reversed = small_spec();
    reversed.protocols = {ProtocolKind::Eer, ProtocolKind::Dbr, ProtocolKind::Vbf};

    const std::string a = temp_path("uwasn_sweep_a.csv");
    const std::string b = temp_path("uwasn_sweep_b.csv");
    write_sweep(run_sweep_serial(forward), a);
    write_sweep(run_sweep_serial(reversed), b);
    CHECK(read_file(a) == read_file(b));
    std::filesystem::remove(a);
    std::filesystem::remove(b);
}

TEST_CASE("a failing cell reports its identity") {
    SweepSpec spec = small_spec();
    spec.node_counts = {8};
    spec.seeds = 1;
    spec.protocols = {ProtocolKind::Vbf};
    spec.base_config.bitrate = -1.0;  // every cell invalid
    for (bool parallel : {false, true}) {
        try {
            if (parallel)
                run_sweep_parallel(spec, 2);
            else
                run_sweep_serial(spec);
            CHECK(false);
        } catch (const std::exception& e) {
            const std::string what = e.what();
            CHECK(what.find("protocol=vbf") != std::string::npos);
            CHECK(what.find("nodes=8") != std::string::npos);
            CHECK(what.find("seed=1") != std::string::npos);
        }
    }
}

TEST_CASE("sweep rejects degenerate grids") {
    SweepSpec spec = small_spec();
    SUBCASE("no protocols") {
        spec.protocols.clear();
        CHECK_THROWS_AS(run_sweep_serial(spec), ConfigError);
    }
    SUBCASE("node count below two") {
        spec.node_counts = {1};
        CHECK_THROWS_AS(run_sweep_serial(spec), ConfigError);
    }
    SUBCASE("zero seeds") {
        spec.seeds = 0;
        CHECK_THROWS_AS(run_sweep_serial(spec), ConfigError);
    }
}
