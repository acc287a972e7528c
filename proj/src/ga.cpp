#include "uwasn/ga.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "uwasn/channel.hpp"

namespace uwasn {

namespace {

constexpr double kSinkBias = 0.7;       // walk probability of the greedy step
constexpr int kWalkRetries = 50;        // per population slot
constexpr int kMutationRetries = 20;
constexpr double kCostTolerance = 1e-12;

// Transmit energy over one link at the lowest power level whose range covers
// it; nullopt when even High cannot reach.
std::optional<double> min_link_energy(double dist, const ScenarioConfig& config) {
    if (dist <= config.transmission_range_low) return link_energy(PowerLevel::Low, config).tx;
    if (dist <= config.transmission_range_high) return link_energy(PowerLevel::High, config).tx;
    return std::nullopt;
}

bool path_less(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

// Ranks individuals: cheaper cost first, then lexicographically smaller path.
struct RankLess {
    const std::vector<Chromosome>& population;
    const std::vector<Fitness>& fitnesses;
    bool operator()(std::size_t a, std::size_t b) const {
        if (fitnesses[a].cost != fitnesses[b].cost) return fitnesses[a].cost < fitnesses[b].cost;
        return path_less(population[a].path, population[b].path);
    }
};

// One sink-biased walk from `start`, avoiding `visited` nodes. Appends onto
// `path` and returns true when the sink is reached within the step cap.
bool grow_to_sink(std::vector<NodeId>& path, std::vector<bool>& visited, NodeId start,
                  const NetworkState& state, const RangeGraph& graph, RngStream& rng) {
    const int step_cap = 2 * static_cast<int>(state.nodes.size());
    NodeId current = start;
    for (int step = 0; step < step_cap; ++step) {
        if (current == NetworkState::kSinkId) return true;
        const auto& neighbors = graph.neighbors(current);
        NodeId greedy = current;
        double greedy_dist = std::numeric_limits<double>::infinity();
        int candidate_count = 0;
        for (NodeId n : neighbors) {
            if (visited[n]) continue;
            ++candidate_count;
            if (graph.sink_distance(n) < greedy_dist) {
                greedy_dist = graph.sink_distance(n);
                greedy = n;
            }
        }
        if (candidate_count == 0) return false;
        NodeId next = greedy;
        if (!rng.bernoulli(kSinkBias)) {
            auto pick = rng.uniform_index(candidate_count);
            for (NodeId n : neighbors) {
                if (visited[n]) continue;
                if (pick == 0) {
                    next = n;
                    break;
                }
                --pick;
            }
        }
        path.push_back(next);
        visited[next] = true;
        current = next;
    }
    return current == NetworkState::kSinkId;
}

std::optional<Chromosome> try_walk(NodeId source, const NetworkState& state, const RangeGraph& graph,
                                   RngStream& rng) {
    std::vector<NodeId> path{source};
    std::vector<bool> visited(state.nodes.size(), false);
    visited[source] = true;
    if (!grow_to_sink(path, visited, source, state, graph, rng)) return std::nullopt;
    return Chromosome{std::move(path)};
}

}  // namespace

RangeGraph::RangeGraph(const NetworkState& state)
    : adjacency_(state.nodes.size()), sink_distance_(state.nodes.size()) {
    const double range = state.config.transmission_range_high;
    const Position sink_pos = state.sink().pos;
    const auto count = static_cast<NodeId>(state.nodes.size());
    for (NodeId a = 0; a < count; ++a) {
        sink_distance_[a] = distance(state.nodes[a].pos, sink_pos);
        for (NodeId b = 0; b < count; ++b) {
            if (a == b) continue;
            if (distance(state.nodes[a].pos, state.nodes[b].pos) <= range)
                adjacency_[a].push_back(b);
        }
    }
}

bool chromosome_valid(const Chromosome& chromosome, NodeId source, const NetworkState& state) {
    const auto& path = chromosome.path;
    if (path.size() < 2) return false;
    if (path.front() != source || path.back() != NetworkState::kSinkId) return false;
    std::vector<bool> seen(state.nodes.size(), false);
    for (NodeId id : path) {
        if (id >= state.nodes.size() || seen[id]) return false;
        seen[id] = true;
    }
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double d = distance(state.nodes[path[i]].pos, state.nodes[path[i + 1]].pos);
        if (d > state.config.transmission_range_high) return false;
    }
    return true;
}

std::vector<Chromosome> init_population(NodeId source, const NetworkState& state,
                                        const RangeGraph& graph, int population_size,
                                        RngStream& rng) {
    if (source == NetworkState::kSinkId)
        throw std::invalid_argument("init_population: source must differ from the sink");

    std::vector<Chromosome> population;
    std::vector<std::size_t> failed_slots;
    for (int slot = 0; slot < population_size; ++slot) {
        std::optional<Chromosome> grown;
        for (int attempt = 0; attempt < kWalkRetries && !grown; ++attempt)
            grown = try_walk(source, state, graph, rng);
        if (grown) {
            population.push_back(std::move(*grown));
        } else {
            failed_slots.push_back(population.size());
            population.emplace_back();  // placeholder, filled below
        }
    }

    if (failed_slots.size() == population.size()) throw UnreachableError(source);

    if (!failed_slots.empty()) {
        std::vector<std::size_t> successes;
        for (std::size_t i = 0; i < population.size(); ++i)
            if (!population[i].path.empty()) successes.push_back(i);
        for (std::size_t k = 0; k < failed_slots.size(); ++k)
            population[failed_slots[k]] = population[successes[k % successes.size()]];
    }
    return population;
}

Fitness evaluate(const Chromosome& chromosome, const NetworkState& state) {
    if (!chromosome_valid(chromosome, chromosome.path.empty() ? 0 : chromosome.path.front(), state))
        throw std::invalid_argument("evaluate: invalid chromosome");

    const ScenarioConfig& config = state.config;
    const GaConfig& ga = config.ga;

    double transmit_energy = 0.0;
    double min_residual = std::numeric_limits<double>::infinity();
    const auto& path = chromosome.path;
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        const double d = distance(state.nodes[path[i]].pos, state.nodes[path[i + 1]].pos);
        const auto e = min_link_energy(d, config);
        if (!e) throw std::invalid_argument("evaluate: link exceeds transmission_range_high");
        transmit_energy += *e;
        min_residual = std::min(min_residual, state.nodes[path[i]].energy);  // non-sink nodes only
    }

    const double hops = static_cast<double>(path.size() - 1);
    const double cost = ga.weight_energy * transmit_energy + ga.weight_hops * hops +
                        ga.weight_balance * config.initial_energy / (ga.epsilon + min_residual);
    return {cost, 1.0 / (1.0 + cost)};
}

std::pair<std::size_t, std::size_t> select_parents(const std::vector<Chromosome>& population,
                                                   const std::vector<Fitness>& fitnesses,
                                                   const GaConfig& config, RngStream& rng) {
    if (population.size() < 2)
        throw std::invalid_argument("select_parents: population must hold at least 2 individuals");
    const RankLess less{population, fitnesses};

    if (config.selection_mode == SelectionMode::TopTwo) {
        std::vector<std::size_t> order(population.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::partial_sort(order.begin(), order.begin() + 2, order.end(), less);
        return {order[0], order[1]};
    }

    // Tournament over k distinct entrants; k = population size degenerates to
    // the global best.
    auto run_tournament = [&] {
        const std::size_t k = std::min<std::size_t>(config.tournament_k, population.size());
        std::vector<std::size_t> pool(population.size());
        for (std::size_t i = 0; i < pool.size(); ++i) pool[i] = i;
        std::size_t winner = population.size();
        for (std::size_t i = 0; i < k; ++i) {
            const auto j = i + rng.uniform_index(pool.size() - i);
            std::swap(pool[i], pool[j]);
            if (winner == population.size() || less(pool[i], winner)) winner = pool[i];
        }
        return winner;
    };
    const std::size_t a = run_tournament();
    const std::size_t b = run_tournament();
    return {a, b};
}

namespace {

void remove_cycles(std::vector<NodeId>& path) {
    for (std::size_t i = 0; i < path.size(); ++i) {
        std::size_t last = i;
        for (std::size_t j = i + 1; j < path.size(); ++j)
            if (path[j] == path[i]) last = j;
        if (last != i) path.erase(path.begin() + i + 1, path.begin() + last + 1);
    }
}

}  // namespace

std::pair<Chromosome, Chromosome> crossover(const Chromosome& parent_a, const Chromosome& parent_b,
                                            RngStream& rng) {
    const auto& a = parent_a.path;
    const auto& b = parent_b.path;

    std::vector<NodeId> common;
    for (std::size_t i = 1; i + 1 < a.size(); ++i) {
        const NodeId id = a[i];
        for (std::size_t j = 1; j + 1 < b.size(); ++j) {
            if (b[j] == id) {
                common.push_back(id);
                break;
            }
        }
    }
    if (common.empty()) return {parent_a, parent_b};
    std::sort(common.begin(), common.end());

    const NodeId cut = common[rng.uniform_index(common.size())];
    const auto pos_a = std::find(a.begin(), a.end(), cut) - a.begin();
    const auto pos_b = std::find(b.begin(), b.end(), cut) - b.begin();

    Chromosome child_a, child_b;
    child_a.path.assign(a.begin(), a.begin() + pos_a + 1);
    child_a.path.insert(child_a.path.end(), b.begin() + pos_b + 1, b.end());
    child_b.path.assign(b.begin(), b.begin() + pos_b + 1);
    child_b.path.insert(child_b.path.end(), a.begin() + pos_a + 1, a.end());

    remove_cycles(child_a.path);
    remove_cycles(child_b.path);
    return {std::move(child_a), std::move(child_b)};
}

Chromosome mutate(const Chromosome& chromosome, const NetworkState& state, const RangeGraph& graph,
                  double rate, RngStream& rng) {
    if (!rng.bernoulli(rate)) return chromosome;
    const auto& path = chromosome.path;
    if (path.size() <= 2) return chromosome;  // no interior to mutate

    const std::size_t cut = 1 + rng.uniform_index(path.size() - 2);
    for (int attempt = 0; attempt < kMutationRetries; ++attempt) {
        std::vector<NodeId> regrown(path.begin(), path.begin() + cut + 1);
        std::vector<bool> visited(state.nodes.size(), false);
        for (NodeId id : regrown) visited[id] = true;
        if (grow_to_sink(regrown, visited, regrown.back(), state, graph, rng))
            return Chromosome{std::move(regrown)};
    }
    return chromosome;
}

Chromosome evolve(NodeId source, const NetworkState& state, const RangeGraph& graph,
                  RngStream& rng, std::vector<GenerationStats>* trace) {
    const GaConfig& ga = state.config.ga;
    std::vector<Chromosome> population = init_population(source, state, graph, ga.population_size, rng);

    Chromosome best_ever;
    double best_ever_cost = std::numeric_limits<double>::infinity();
    double previous_best = std::numeric_limits<double>::infinity();
    int stable_generations = 0;

    for (int generation = 1; generation <= ga.max_generations; ++generation) {
        std::vector<Fitness> fitnesses(population.size());
        double cost_sum = 0.0;
        for (std::size_t i = 0; i < population.size(); ++i) {
            fitnesses[i] = evaluate(population[i], state);
            cost_sum += fitnesses[i].cost;
        }

        std::vector<std::size_t> order(population.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        std::sort(order.begin(), order.end(), RankLess{population, fitnesses});

        const std::size_t best_idx = order[0];
        if (fitnesses[best_idx].cost < best_ever_cost ||
            (fitnesses[best_idx].cost == best_ever_cost &&
             path_less(population[best_idx].path, best_ever.path))) {
            best_ever = population[best_idx];
            best_ever_cost = fitnesses[best_idx].cost;
        }

        if (trace)
            trace->push_back({generation, fitnesses[best_idx].cost,
                              cost_sum / static_cast<double>(population.size())});

        if (std::fabs(best_ever_cost - previous_best) <= kCostTolerance)
            ++stable_generations;
        else
            stable_generations = 0;
        previous_best = best_ever_cost;
        if (stable_generations >= ga.convergence_window) break;

        const bool uniform = std::all_of(population.begin(), population.end(),
                                         [&](const Chromosome& c) { return c == population.front(); });
        if (uniform) break;
        if (generation == ga.max_generations) break;

        std::vector<Chromosome> next;
        next.reserve(population.size());
        next.push_back(population[order[0]]);
        next.push_back(population[order[1]]);
        while (next.size() < population.size()) {
            const auto [pa, pb] = select_parents(population, fitnesses, ga, rng);
            auto [child_a, child_b] = crossover(population[pa], population[pb], rng);
            next.push_back(mutate(child_a, state, graph, ga.mutation_rate, rng));
            if (next.size() < population.size())
                next.push_back(mutate(child_b, state, graph, ga.mutation_rate, rng));
        }
        population = std::move(next);
    }

    return best_ever;
}

Chromosome evolve(NodeId source, const NetworkState& state, RngStream& rng,
                  std::vector<GenerationStats>* trace) {
    const RangeGraph graph(state);
    return evolve(source, state, graph, rng, trace);
}

Chromosome oracle_best_path(NodeId source, const NetworkState& state) {
    if (state.nodes.size() > 12)
        throw std::invalid_argument("oracle_best_path: exhaustive search capped at 12 nodes");
    if (source == NetworkState::kSinkId)
        throw std::invalid_argument("oracle_best_path: source must differ from the sink");

    const RangeGraph graph(state);
    Chromosome best;
    double best_cost = std::numeric_limits<double>::infinity();

    std::vector<NodeId> path{source};
    std::vector<bool> visited(state.nodes.size(), false);
    visited[source] = true;

    auto dfs = [&](auto&& self, NodeId current) -> void {
        if (current == NetworkState::kSinkId) {
            const Chromosome candidate{path};
            const double cost = evaluate(candidate, state).cost;
            if (cost < best_cost || (cost == best_cost && path_less(path, best.path))) {
                best = candidate;
                best_cost = cost;
            }
            return;
        }
        for (NodeId next : graph.neighbors(current)) {
            if (visited[next]) continue;
            visited[next] = true;
            path.push_back(next);
            self(self, next);
            path.pop_back();
            visited[next] = false;
        }
    };
    dfs(dfs, source);

    if (best.path.empty()) throw UnreachableError(source);
    return best;
}

}  // namespace uwasn
