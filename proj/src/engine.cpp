#include "uwasn/engine.hpp"

#include <stdexcept>

#include "uwasn/channel.hpp"

namespace uwasn {

namespace {
constexpr int kEerMaxRetries = 3;  // retransmissions after the first attempt
}

Engine::Engine(const ScenarioConfig& config, ProtocolKind protocol, EngineOptions options)
    : Engine(
          [&] {
              RngStream deploy_rng(config.seed, "deployment");
              return deploy(config, deploy_rng);
          }(),
          protocol, options) {}

Engine::Engine(NetworkState state, ProtocolKind protocol, EngineOptions options)
    : state_(std::move(state)),
      protocol_(protocol),
      options_(options),
      mobility_rng_(state_.config.seed, "mobility"),
      channel_rng_(state_.config.seed, "channel"),
      ga_rng_(state_.config.seed, "ga"),
      ttl_hops_(2 * static_cast<int>(state_.nodes.size())) {}

Engine::PacketBook& Engine::book(std::uint64_t packet_id) {
    auto [it, inserted] = books_.try_emplace(packet_id);
    if (inserted) {
        it->second.seen.assign(state_.nodes.size(), 0);
        it->second.forwarded.assign(state_.nodes.size(), 0);
        it->second.hold_cancelled.assign(state_.nodes.size(), 0);
    }
    return it->second;
}

RoundMetrics Engine::run_round(int round) {
    if (round < 1) throw std::invalid_argument("run_round: round must be >= 1");
    current_ = RoundMetrics{};
    current_.round = round;
    round_graph_.reset();

    queue_.schedule({.time = queue_.clock(), .kind = EventKind::RoundStart, .round = round});
    while (!queue_.empty()) handle(queue_.pop());
    // queue drained: nothing in flight past the round boundary
    last_round_dropped_ = current_.generated - current_.delivered;

    queue_.schedule({.time = queue_.clock(), .kind = EventKind::RoundEnd, .round = round});
    while (!queue_.empty()) handle(queue_.pop());

    books_.clear();
    current_.residual_total = state_.residual_total();
    current_.alive_nodes = state_.alive_count();
    return current_;
}

RunResult Engine::run() {
    RunResult result;
    result.deployment_positions.reserve(state_.nodes.size());
    for (const auto& n : state_.nodes) result.deployment_positions.push_back(n.pos);
    for (int round = 1; round <= state_.config.rounds; ++round)
        result.rounds.push_back(run_round(round));
    result.traces = traces_;
    result.transmits = transmits_;
    return result;
}

void Engine::handle(const Event& event) {
    switch (event.kind) {
        case EventKind::RoundStart:
            generate_packets(event.round, event.time);
            break;
        case EventKind::RoundEnd:
            apply_mobility(state_, mobility_rng_);
            toggle_power_levels(state_, event.round);
            break;
        case EventKind::PacketArrival:
            on_arrival(event);
            break;
        case EventKind::HoldExpire:
            on_hold_expire(event);
            break;
    }
}

void Engine::generate_packets(int round, double now) {
    for (NodeId source : state_.source_ids()) {
        ++current_.generated;
        Packet packet;
        packet.id = next_packet_id_++;
        packet.source = source;
        packet.created_at = now;
        packet.anchor_source_pos = state_.node(source).pos;
        packet.anchor_sink_pos = state_.sink().pos;
        packet.payload_size = state_.config.packet_size;
        book(packet.id).seen[source] = 1;

        if (!state_.node(source).alive) continue;  // generated but never sent

        if (protocol_ == ProtocolKind::Eer) {
            if (!round_graph_) round_graph_.emplace(state_);
            try {
                packet.route = evolve(source, state_, *round_graph_, ga_rng_).path;
            } catch (const UnreachableError&) {
                continue;  // dropped at the source
            }
        }
        queue_.schedule({.time = now,
                         .kind = EventKind::HoldExpire,
                         .node = source,
                         .packet = std::move(packet),
                         .round = round});
    }
}

void Engine::on_arrival(const Event& event) {
    const Packet& packet = event.packet;
    PacketBook& bk = book(packet.id);
    const SensorNode& receiver = state_.node(event.node);
    if (!receiver.alive) return;  // dead modems hear nothing

    debit_energy(state_, event.node, state_.config.power_watts_rx * state_.config.tx_duration());

    if (receiver.is_sink) {
        if (bk.delivered) return;  // duplicates count once
        bk.delivered = true;
        ++current_.delivered;
        const double delay = event.time - packet.created_at;
        current_.delay_samples.push_back(delay);
        if (options_.record_traces) {
            DeliveredTrace trace;
            trace.round = current_.round;
            trace.packet_id = packet.id;
            trace.delay = delay;
            trace.hops = packet.hops;
            for (NodeId id : packet.hops) trace.hop_positions.push_back(state_.node(id).pos);
            trace.anchor_source_pos = packet.anchor_source_pos;
            trace.anchor_sink_pos = packet.anchor_sink_pos;
            traces_.push_back(std::move(trace));
        }
        return;
    }

    if (!packet.route.empty()) {
        // Source-routed: this node relays immediately.
        queue_.schedule({.time = event.time,
                         .kind = EventKind::HoldExpire,
                         .node = event.node,
                         .packet = packet,
                         .round = event.round});
        return;
    }

    if (!event.first_copy) bk.hold_cancelled[event.node] = 1;  // overhearing suppression
}

void Engine::on_hold_expire(const Event& event) {
    if (!event.packet.route.empty()) {
        eer_transmit(event);
        return;
    }
    PacketBook& bk = book(event.packet.id);
    if (bk.hold_cancelled[event.node] || bk.forwarded[event.node]) return;
    if (!state_.node(event.node).alive) return;

    Packet packet = event.packet;
    packet.hops.push_back(event.node);
    broadcast_transmit(event.node, std::move(packet), event.time);
}

void Engine::broadcast_transmit(NodeId transmitter, Packet packet, double time) {
    const SensorNode& sender = state_.node(transmitter);
    if (!sender.alive) throw std::logic_error("broadcast_transmit: dead transmitter");

    PacketBook& bk = book(packet.id);
    bk.forwarded[transmitter] = 1;
    if (options_.record_traces)
        transmits_.push_back({current_.round, packet.id, transmitter, time});

    const ScenarioConfig& config = state_.config;
    const PowerLevel level = sender.power_level;
    const double range = config.range(level);
    const Position sender_pos = sender.pos;
    debit_energy(state_, transmitter, link_energy(level, config).tx);

    const double tx_end = time + config.tx_duration();
    // Common hold origin: past every in-range propagation delay, so holds
    // compare directly and nobody transmits before receiving.
    const double hold_origin = tx_end + range / kSoundSpeed;

    packet.last_hop = transmitter;
    packet.last_hop_pos = sender_pos;

    for (NodeId v = 0; v < static_cast<NodeId>(state_.nodes.size()); ++v) {
        if (v == transmitter) continue;
        const SensorNode& candidate = state_.node(v);
        if (!candidate.alive) continue;
        const double d = distance(sender_pos, candidate.pos);
        if (d > range) continue;
        const double p = link_budget(sender_pos, candidate.pos, level, config).delivery_prob;
        if (!channel_rng_.bernoulli(p)) continue;

        const bool first = !bk.seen[v];
        bk.seen[v] = 1;
        queue_.schedule({.time = tx_end + d / kSoundSpeed,
                         .kind = EventKind::PacketArrival,
                         .node = v,
                         .packet = packet,
                         .first_copy = first});

        if (first && !candidate.is_sink && !bk.forwarded[v] &&
            static_cast<int>(packet.hops.size()) < ttl_hops_) {
            const ProtocolDecision decision = on_receive(protocol_, candidate, packet, state_);
            if (decision.action == ProtocolDecision::Action::Forward)
                queue_.schedule({.time = hold_origin + decision.hold,
                                 .kind = EventKind::HoldExpire,
                                 .node = v,
                                 .packet = packet});
        }
    }
}

void Engine::eer_transmit(const Event& event) {
    const NodeId holder = event.node;
    if (!state_.node(holder).alive) return;  // packet dies here

    Packet packet = event.packet;
    if (event.attempt == 0) {
        packet.hops.push_back(holder);
        if (options_.record_traces)
            transmits_.push_back({current_.round, packet.id, holder, event.time});
    }
    const std::size_t next_index = packet.hops.size();
    if (next_index >= packet.route.size()) return;

    const ScenarioConfig& config = state_.config;
    const NodeId next = packet.route[next_index];
    const double d = distance(state_.node(holder).pos, state_.node(next).pos);

    // Lowest power level whose range covers the link.
    PowerLevel level;
    if (d <= config.transmission_range_low)
        level = PowerLevel::Low;
    else if (d <= config.transmission_range_high)
        level = PowerLevel::High;
    else
        return;  // route link no longer feasible

    debit_energy(state_, holder, link_energy(level, config).tx);
    const double tx_end = event.time + config.tx_duration();
    const double p =
        link_budget(state_.node(holder).pos, state_.node(next).pos, level, config).delivery_prob;

    if (channel_rng_.bernoulli(p)) {
        queue_.schedule({.time = tx_end + d / kSoundSpeed,
                         .kind = EventKind::PacketArrival,
                         .node = next,
                         .packet = std::move(packet)});
    } else if (event.attempt < kEerMaxRetries) {
        queue_.schedule({.time = tx_end,
                         .kind = EventKind::HoldExpire,
                         .node = holder,
                         .packet = std::move(packet),
                         .attempt = event.attempt + 1});
    }
    // else: out of retries, dropped
}

RunResult run_simulation(const ScenarioConfig& config, ProtocolKind protocol,
                         EngineOptions options) {
    Engine engine(config, protocol, options);
    return engine.run();
}

}  // namespace uwasn
