#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "uwasn/rng.hpp"
#include "uwasn/world.hpp"

namespace uwasn {

// A GA individual: a simple source->sink path of node ids, every consecutive
// pair within transmission_range_high.
struct Chromosome {
    std::vector<NodeId> path;

    bool operator==(const Chromosome&) const = default;
};

struct Fitness {
    double cost = 0.0;     // >= 0
    double fitness = 0.0;  // 1 / (1 + cost), in (0, 1]
};

struct UnreachableError : std::runtime_error {
    explicit UnreachableError(NodeId source)
        : std::runtime_error("no source->sink path found from node " + std::to_string(source)),
          source(source) {}
    NodeId source;
};

// Precomputed range_high adjacency for one state snapshot; positions are fixed
// within a round, so one graph serves every GA call of that round.
class RangeGraph {
public:
    RangeGraph(const NetworkState& state);

    const std::vector<NodeId>& neighbors(NodeId id) const { return adjacency_[id]; }
    double sink_distance(NodeId id) const { return sink_distance_[id]; }
    std::size_t node_count() const { return adjacency_.size(); }

private:
    std::vector<std::vector<NodeId>> adjacency_;
    std::vector<double> sink_distance_;
};

bool chromosome_valid(const Chromosome& chromosome, NodeId source, const NetworkState& state);

// Sink-biased randomized walks: with probability 0.7 step to the unvisited
// in-range neighbor nearest the sink, else to a uniform unvisited in-range
// neighbor. A walk that misses the sink within 2*num_nodes steps retries up to
// 50 times; slots that never succeed duplicate a successful chromosome.
// Throws UnreachableError when every walk fails.
std::vector<Chromosome> init_population(NodeId source, const NetworkState& state,
                                        const RangeGraph& graph, int population_size,
                                        RngStream& rng);

// cost = w_e * sum of per-link transmit energy at the lowest sufficient power
// level + w_h * hop count + w_b * initial_energy / (epsilon + weakest residual
// on the path). Rejects invalid chromosomes.
Fitness evaluate(const Chromosome& chromosome, const NetworkState& state);

// TopTwo: the two highest-fitness individuals (ties by lexicographically
// smaller path). Tournament: two independent k-tournaments over distinct
// entrants.
std::pair<std::size_t, std::size_t> select_parents(const std::vector<Chromosome>& population,
                                                   const std::vector<Fitness>& fitnesses,
                                                   const GaConfig& config, RngStream& rng);

// One-point crossover at a uniformly chosen common interior node, suffix swap,
// then cycle removal. Disjoint interiors fall back to clones.
std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a, const Chromosome& parent_b,
                                            RngStream& rng);

// With probability rate, truncate at a uniform interior index and regrow to
// the sink with the init walk, avoiding nodes already used; returns the
// original when regrowth fails 20 times.
Chromosome mutate(const Chromosome& chromosome, const NetworkState& state, const RangeGraph& graph,
                  double rate, RngStream& rng);

struct GenerationStats {
    int generation = 0;
    double best_cost = 0.0;
    double mean_cost = 0.0;
};

// Generational loop with two elites; stops when the best cost is stable for
// convergence_window generations, the population becomes uniform, or
// max_generations is reached. Returns the best-ever chromosome.
Chromosome evolve(NodeId source, const NetworkState& state, const RangeGraph& graph,
                  RngStream& rng, std::vector<GenerationStats>* trace = nullptr);

Chromosome evolve(NodeId source, const NetworkState& state, RngStream& rng,
                  std::vector<GenerationStats>* trace = nullptr);

// Exhaustive minimum-cost simple path, ties by lexicographically smaller path.
// Verification oracle; requires num_nodes <= 12.
Chromosome oracle_best_path(NodeId source, const NetworkState& state);

}  // namespace uwasn
