#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "helpers.hpp"
#include "uwasn/engine.hpp"
#include "uwasn/ga.hpp"

using namespace uwasn;
using uwasn::test::make_state;
using uwasn::test::quiet_config;

namespace {

bool connected_to_sink(const NetworkState& state, NodeId source) {
    const RangeGraph graph(state);
    std::vector<bool> seen(state.nodes.size(), false);
    std::vector<NodeId> stack{source};
    seen[source] = true;
    while (!stack.empty()) {
        const NodeId u = stack.back();
        stack.pop_back();
        if (u == NetworkState::kSinkId) return true;
        for (NodeId v : graph.neighbors(u)) {
            if (!seen[v]) {
                seen[v] = true;
                stack.push_back(v);
            }
        }
    }
    return false;
}

// Random deployment rejected until the deepest source can reach the sink.
NetworkState connected_state(int num_nodes, std::uint64_t& seed, NodeId& source) {
    ScenarioConfig config = quiet_config();
    config.region = {300, 300, 300};
    config.num_nodes = num_nodes;
    config.num_sources = 1;
    for (;; ++seed) {
        config.seed = seed;
        RngStream rng(seed, "deployment");
        NetworkState state = deploy(config, rng);
        source = state.source_ids().front();
        if (connected_to_sink(state, source)) {
            ++seed;
            return state;
        }
    }
}

}  // namespace

TEST_CASE("evaluate: frozen hand-computed costs") {
    ScenarioConfig config = quiet_config();

    SUBCASE("direct low-power link") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 50}}, {1});
        const Fitness f = evaluate(Chromosome{{1, 0}}, state);
        // 1.0 * 0.2048 + 0.1 * 1 + 0.05 * 100/(1e-6 + 100)
        CHECK(f.cost == doctest::Approx(0.3547999995).epsilon(1e-12));
        CHECK(f.fitness == doctest::Approx(1.0 / (1.0 + 0.3547999995)).epsilon(1e-12));
    }

    SUBCASE("bottleneck term separates identical geometries") {
        NetworkState state =
            make_state(config, {0, 0, 0}, {{0, 0, 200}, {-50, 0, 100}, {50, 0, 100}}, {1});
        state.nodes[3].energy = 1e-5;  // nearly dead relay
        const double healthy = evaluate(Chromosome{{1, 2, 0}}, state).cost;
        const double dying = evaluate(Chromosome{{1, 3, 0}}, state).cost;
        CHECK(dying > healthy);
    }

    SUBCASE("zero weights give fitness 1 to every path") {
        ScenarioConfig degenerate = config;
        degenerate.ga.weight_energy = 0.0;
        degenerate.ga.weight_hops = 0.0;
        degenerate.ga.weight_balance = 0.0;
        NetworkState state = make_state(degenerate, {0, 0, 0}, {{0, 0, 50}, {0, 30, 40}}, {1});
        CHECK(evaluate(Chromosome{{1, 0}}, state).fitness == 1.0);
        CHECK(evaluate(Chromosome{{1, 2, 0}}, state).fitness == 1.0);
    }

    SUBCASE("invalid chromosomes are rejected") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 50}, {0, 0, 400}}, {1});
        CHECK_THROWS_AS(evaluate(Chromosome{{1}}, state), std::invalid_argument);        // too short
        CHECK_THROWS_AS(evaluate(Chromosome{{1, 1, 0}}, state), std::invalid_argument);  // repeat
        CHECK_THROWS_AS(evaluate(Chromosome{{1, 2, 0}}, state), std::invalid_argument);  // out of range
    }
}

TEST_CASE("oracle validated by hand on the triangle") {
    ScenarioConfig config = quiet_config();
    // Direct link needs High power (100 m), the relay path two Low hops.
    NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 100}, {0, 0, 50}}, {1});
    CHECK(evaluate(Chromosome{{1, 0}}, state).cost == doctest::Approx(0.9691999995).epsilon(1e-12));
    CHECK(evaluate(Chromosome{{1, 2, 0}}, state).cost ==
          doctest::Approx(0.6595999995).epsilon(1e-12));
    const Chromosome best = oracle_best_path(1, state);
    CHECK(best.path == std::vector<NodeId>{1, 2, 0});
}

TEST_CASE("oracle edge cases") {
    ScenarioConfig config = quiet_config();

    SUBCASE("one-hop network") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 100}}, {1});
        CHECK(oracle_best_path(1, state).path == std::vector<NodeId>{1, 0});
    }
    SUBCASE("unreachable source") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 400}}, {1});
        CHECK_THROWS_AS(oracle_best_path(1, state), UnreachableError);
    }
    SUBCASE("size cap enforced") {
        ScenarioConfig big = quiet_config();
        big.num_nodes = 13;
        RngStream rng(1, "deployment");
        const NetworkState state = deploy(big, rng);
        CHECK_THROWS_AS(oracle_best_path(1, state), std::invalid_argument);
    }
}

TEST_CASE("init_population: walks produce valid simple paths") {
    ScenarioConfig config = quiet_config();

    SUBCASE("one-hop network yields source->sink paths") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 100}}, {1});
        RngStream rng(1, "ga");
        const RangeGraph graph(state);
        const auto population = init_population(1, state, graph, 10, rng);
        REQUIRE(population.size() == 10);
        for (const auto& c : population) CHECK(c.path == std::vector<NodeId>{1, 0});
    }

    SUBCASE("isolated source is unreachable") {
        NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 400}}, {1});
        RngStream rng(1, "ga");
        const RangeGraph graph(state);
        CHECK_THROWS_AS(init_population(1, state, graph, 10, rng), UnreachableError);
    }

    SUBCASE("random connected 10-node graphs give 20 valid chromosomes") {
        std::uint64_t seed = 1;
        for (int trial = 0; trial < 10; ++trial) {
            NodeId source = 0;
            const NetworkState state = connected_state(10, seed, source);
            RngStream rng(seed, "ga");
            const RangeGraph graph(state);
            const auto population = init_population(source, state, graph, 20, rng);
            REQUIRE(population.size() == 20);
            for (const auto& c : population) CHECK(chromosome_valid(c, source, state));
        }
    }
}

TEST_CASE("select_parents") {
    // Dummy population; fitness supplied directly.
    std::vector<Chromosome> population{{{1, 2, 0}}, {{1, 3, 0}}, {{1, 4, 0}}};
    GaConfig config;
    RngStream rng(5, "ga");

    SUBCASE("top-two picks the two fittest") {
        std::vector<Fitness> fits{{7.0 / 3.0, 0.3}, {1.0 / 9.0, 0.9}, {1.0, 0.5}};
        const auto [a, b] = select_parents(population, fits, config, rng);
        CHECK(a == 1);
        CHECK(b == 2);
    }

    SUBCASE("equal fitness falls back to lexicographically smallest paths") {
        std::vector<Fitness> fits{{1.0, 0.5}, {1.0, 0.5}, {1.0, 0.5}};
        const auto [a, b] = select_parents(population, fits, config, rng);
        CHECK(a == 0);  // path {1,2,0}
        CHECK(b == 1);  // path {1,3,0}
    }

    SUBCASE("full-size tournament degenerates to the global best") {
        config.selection_mode = SelectionMode::Tournament;
        config.tournament_k = 3;
        std::vector<Fitness> fits{{2.0, 1 / 3.0}, {0.5, 2 / 3.0}, {1.0, 0.5}};
        for (int draw = 0; draw < 100; ++draw) {
            const auto [a, b] = select_parents(population, fits, config, rng);
            CHECK(a == 1);
            CHECK(b == 1);
        }
    }
}

TEST_CASE("crossover: the worked example and the clone fallback") {
    RngStream rng(5, "ga");

    SUBCASE("single common interior node, no repair needed") {
        const Chromosome a{{1, 2, 3, 0}};     // s a b t
        const Chromosome b{{1, 4, 2, 5, 0}};  // s c a d t
        const auto [child_a, child_b] = crossover(a, b, rng);
        CHECK(child_a.path == std::vector<NodeId>{1, 2, 5, 0});
        CHECK(child_b.path == std::vector<NodeId>{1, 4, 2, 3, 0});
    }

    SUBCASE("disjoint interiors clone the parents") {
        const Chromosome a{{1, 2, 0}};
        const Chromosome b{{1, 3, 0}};
        const auto [child_a, child_b] = crossover(a, b, rng);
        CHECK(child_a.path == a.path);
        CHECK(child_b.path == b.path);
    }
}

TEST_CASE("operator closure over randomized trials") {
    std::uint64_t seed = 100;
    RngStream op_rng(9, "ga");
    int crossovers = 0, mutations = 0;
    while (crossovers < 1000 || mutations < 1000) {
        NodeId source = 0;
        const NetworkState state = connected_state(10, seed, source);
        const RangeGraph graph(state);
        RngStream walk_rng(seed, "ga");
        const auto population = init_population(source, state, graph, 12, walk_rng);

        for (std::size_t i = 0; i + 1 < population.size(); i += 2) {
            const auto [a, b] = crossover(population[i], population[i + 1], op_rng);
            CHECK(chromosome_valid(a, source, state));
            CHECK(chromosome_valid(b, source, state));
            ++crossovers;
        }
        for (const auto& c : population) {
            const Chromosome m = mutate(c, state, graph, 1.0, op_rng);
            CHECK(chromosome_valid(m, source, state));
            ++mutations;
        }
    }
}

TEST_CASE("mutate: identity cases") {
    ScenarioConfig config = quiet_config();
    NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 100}}, {1});
    const RangeGraph graph(state);
    RngStream rng(3, "ga");

    const Chromosome direct{{1, 0}};
    CHECK(mutate(direct, state, graph, 0.0, rng).path == direct.path);  // rate 0
    CHECK(mutate(direct, state, graph, 1.0, rng).path == direct.path);  // no interior
}

TEST_CASE("evolve: one-hop network converges in a single generation") {
    ScenarioConfig config = quiet_config();
    NetworkState state = make_state(config, {0, 0, 0}, {{0, 0, 100}}, {1});
    RngStream rng(1, "ga");
    std::vector<GenerationStats> trace;
    const Chromosome best = evolve(1, state, rng, &trace);
    CHECK(best.path == std::vector<NodeId>{1, 0});
    CHECK(trace.size() == 1);  // uniform population ends the search
}

TEST_CASE("evolve is deterministic and the trace is non-increasing") {
    std::uint64_t seed = 400;
    NodeId source = 0;
    const NetworkState state = connected_state(10, seed, source);

    RngStream rng_a(77, "ga"), rng_b(77, "ga");
    std::vector<GenerationStats> trace;
    const Chromosome a = evolve(source, state, rng_a, &trace);
    const Chromosome b = evolve(source, state, rng_b);
    CHECK(a.path == b.path);
    CHECK(trace.size() <= static_cast<std::size_t>(state.config.ga.max_generations));
    for (std::size_t i = 1; i < trace.size(); ++i)
        CHECK(trace[i].best_cost <= trace[i - 1].best_cost + 1e-15);
}

TEST_CASE("evolve matches the exhaustive oracle on small graphs") {
    std::uint64_t seed = 700;
    int matches = 0;
    const int trials = 20;
    for (int trial = 0; trial < trials; ++trial) {
        NodeId source = 0;
        const NetworkState state = connected_state(9, seed, source);
        RngStream rng(seed, "ga");
        const double ga_cost = evaluate(evolve(source, state, rng), state).cost;
        const double oracle_cost = evaluate(oracle_best_path(source, state), state).cost;
        CHECK(ga_cost >= oracle_cost - 1e-12);
        if (ga_cost <= oracle_cost + 1e-12) ++matches;
    }
    CHECK(matches >= trials * 8 / 10);
}

TEST_CASE("weight scaling leaves the oracle argmin unchanged") {
    std::uint64_t seed = 900;
    for (int trial = 0; trial < 5; ++trial) {
        NodeId source = 0;
        NetworkState state = connected_state(8, seed, source);
        const Chromosome base = oracle_best_path(source, state);
        for (double scale : {0.1, 7.3}) {
            NetworkState scaled = state;
            scaled.config.ga.weight_energy *= scale;
            scaled.config.ga.weight_hops *= scale;
            scaled.config.ga.weight_balance *= scale;
            CHECK(oracle_best_path(source, scaled).path == base.path);
        }
    }
}

TEST_CASE("a draining node is routed through only when nothing cheaper exists") {
    ScenarioConfig config = quiet_config();
    // Five nodes: the direct relay (2) sits on the short path, the detour
    // relays (3, 4) cost one extra hop.
    NetworkState state = make_state(
        config, {0, 0, 0},
        {{0, 0, 170}, {0, 0, 70}, {-100, 0, 120}, {-90, 0, 45}}, {1});

    // Fresh energies: the two-hop path through node 2 wins.
    CHECK(oracle_best_path(1, state).path == std::vector<NodeId>{1, 2, 0});

    // Node 2 nearly drained: its bottleneck term dominates and the oracle
    // detours through 3 and 4 despite the extra hop.
    state.nodes[2].energy = 0.5;
    CHECK(oracle_best_path(1, state).path == std::vector<NodeId>{1, 3, 4, 0});

    // With the detour relays also drained there is no cheaper alternative,
    // and the low-energy direct relay is used again.
    state.nodes[3].energy = 0.4;
    state.nodes[4].energy = 0.4;
    CHECK(oracle_best_path(1, state).path == std::vector<NodeId>{1, 2, 0});
}

TEST_CASE("load balancing alternates between twin disjoint paths") {
    ScenarioConfig config = quiet_config();
    config.rounds = 20;
    // Two mirror-image relays; the direct source->sink line is out of range.
    NetworkState state =
        make_state(config, {0, 0, 0}, {{0, 0, 200}, {-60, 0, 100}, {60, 0, 100}}, {1});
    Engine engine(std::move(state), ProtocolKind::Eer, {.record_traces = true});

    std::set<NodeId> relays_used;
    for (int round = 1; round <= 20; ++round) engine.run_round(round);
    for (const auto& trace : engine.traces()) {
        REQUIRE(trace.hops.size() == 2);
        relays_used.insert(trace.hops[1]);
    }
    CHECK(relays_used == std::set<NodeId>{2, 3});
}
