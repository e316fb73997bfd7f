#include "leosim/playback.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <stdexcept>
#include <thread>

#include "leosim/errors.hpp"

namespace leosim {

const char* SimEvent::kind_name(Kind k) {
    switch (k) {
    case Kind::LinkUp: return "LinkUp";
    case Kind::LinkDown: return "LinkDown";
    case Kind::LinkModified: return "LinkModified";
    case Kind::PathChange: return "PathChange";
    case Kind::FlowStats: return "FlowStats";
    case Kind::ProbeResult: return "ProbeResult";
    case Kind::TickLag: return "TickLag";
    case Kind::Warning: return "Warning";
    }
    return "Unknown";
}

std::string SimEvent::to_json_line() const {
    nlohmann::ordered_json j;
    j["tick"] = tick;
    j["t_ms"] = t;
    j["kind"] = kind_name(kind);
    for (const auto& [key, value] : payload.items()) j[key] = value;
    return j.dump();
}

std::vector<double> allocate_throughput(const std::vector<AllocFlow>& flows,
                                        const CapacityMatrix& capacity) {
    // Water-filling in integer kbps: increments are exact, so no link
    // ever ends up above its capacity by floating-point drift.
    constexpr double kKbpsPerMbps = 1000.0;

    std::map<Edge, std::int64_t> residual_kbps;
    std::vector<std::vector<Edge>> flow_links(flows.size());
    std::vector<std::int64_t> rate_kbps(flows.size(), 0);
    std::vector<std::int64_t> demand_kbps(flows.size(), -1); // -1 = unlimited
    std::vector<bool> active(flows.size(), false);

    for (std::size_t f = 0; f < flows.size(); ++f) {
        if (!flows[f].routed) continue;
        active[f] = true;
        if (flows[f].demand_mbps) {
            demand_kbps[f] =
                static_cast<std::int64_t>(std::floor(*flows[f].demand_mbps * kKbpsPerMbps));
            if (demand_kbps[f] <= 0) active[f] = false;
        }
        for (const Edge& e : flows[f].links) {
            flow_links[f].push_back(e);
            if (residual_kbps.count(e) == 0) {
                const auto cap = capacity.at(e.a, e.b);
                if (!cap) throw std::invalid_argument("flow path uses a link with no capacity entry");
                residual_kbps[e] =
                    static_cast<std::int64_t>(std::floor(std::max(0.0, *cap) * kKbpsPerMbps));
            }
        }
    }

    while (true) {
        bool any_active = false;
        for (std::size_t f = 0; f < flows.size(); ++f) any_active = any_active || active[f];
        if (!any_active) break;

        // Active-flow count per link for this round.
        std::map<Edge, std::int64_t> users;
        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (!active[f]) continue;
            for (const Edge& e : flow_links[f]) ++users[e];
        }

        // Smallest equal increment any constraint allows.
        std::int64_t step = std::numeric_limits<std::int64_t>::max();
        for (const auto& [edge, n] : users) {
            step = std::min(step, residual_kbps[edge] / n);
        }
        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (active[f] && demand_kbps[f] >= 0) {
                step = std::min(step, demand_kbps[f] - rate_kbps[f]);
            }
        }

        if (step > 0) {
            for (std::size_t f = 0; f < flows.size(); ++f) {
                if (active[f]) rate_kbps[f] += step;
            }
            for (const auto& [edge, n] : users) {
                residual_kbps[edge] -= step * n;
            }
        }

        // One freeze sweep against this round's counts: every flow on a
        // link that can no longer raise all its users by a whole unit
        // freezes together (the sub-unit leftover stays unallocated), so
        // no late straggler outgrows its peers on a shared bottleneck.
        bool froze = false;
        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (!active[f]) continue;
            if (demand_kbps[f] >= 0 && rate_kbps[f] >= demand_kbps[f]) {
                active[f] = false;
                froze = true;
                continue;
            }
            for (const Edge& e : flow_links[f]) {
                if (residual_kbps[e] < users[e]) {
                    active[f] = false;
                    froze = true;
                    break;
                }
            }
        }
        if (!froze) break; // nothing can move
    }

    std::vector<double> rates(flows.size(), 0.0);
    for (std::size_t f = 0; f < flows.size(); ++f) {
        rates[f] = static_cast<double>(rate_kbps[f]) / kKbpsPerMbps;
    }
    return rates;
}

std::optional<double> probe_rtt_ms(const std::optional<std::vector<std::uint32_t>>& path,
                                   const LatencyMatrix& lm) {
    if (!path || path->size() < 2) return std::nullopt;
    double one_way = 0.0;
    for (std::size_t i = 0; i + 1 < path->size(); ++i) {
        const auto v = lm.at((*path)[i], (*path)[i + 1]);
        if (!v) return std::nullopt; // a link on the path is gone
        one_way += *v;
    }
    return 2.0 * one_way;
}

bool disruption_active(std::uint32_t tick, std::uint32_t change_tick, double window_ms,
                       std::uint32_t interval_ms) {
    if (window_ms <= 0.0) return false;
    const auto window_ticks =
        static_cast<std::uint32_t>(std::ceil(window_ms / static_cast<double>(interval_ms)));
    return tick > change_tick && tick <= change_tick + window_ticks;
}

namespace {

struct FlowRuntime {
    std::uint32_t config_index = 0;
    const FlowSpec* spec = nullptr;
    std::optional<std::vector<std::uint32_t>> path;
    std::optional<std::uint32_t> last_change_tick;
};

LatencyMatrix latency_view(const TopologySnapshot& state) {
    LatencyMatrix lm;
    lm.n = state.node_count;
    lm.edges.reserve(state.links.size());
    lm.values.reserve(state.links.size());
    for (const auto& l : state.links) {
        lm.edges.push_back(l.edge());
        lm.values.push_back(l.latency_ms);
    }
    return lm;
}

CapacityMatrix capacity_view(const TopologySnapshot& state) {
    CapacityMatrix cm;
    cm.n = state.node_count;
    cm.edges.reserve(state.links.size());
    cm.values.reserve(state.links.size());
    for (const auto& l : state.links) {
        cm.edges.push_back(l.edge());
        cm.values.push_back(l.capacity_mbps);
    }
    return cm;
}

nlohmann::ordered_json path_names(const std::optional<std::vector<std::uint32_t>>& path,
                                  const NodeIndex& index) {
    if (!path) return nullptr;
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (std::uint32_t n : *path) arr.push_back(index.nodes[n].name);
    return arr;
}

} // namespace

PlaybackResult run_playback(const ScenarioBundle& bundle, const PlaybackOptions& options) {
    const NodeIndex& index = bundle.node_index;
    const auto emit = [&](SimEvent&& ev, PlaybackResult& result) {
        ++result.event_count;
        if (options.sink) options.sink(ev);
    };

    // Resolve the played flow subset against the configured flows.
    std::vector<FlowRuntime> flows;
    {
        std::set<std::string> wanted(options.flow_ids.begin(), options.flow_ids.end());
        std::set<std::string> seen;
        for (std::uint32_t i = 0; i < bundle.config.flows.size(); ++i) {
            const FlowSpec& spec = bundle.config.flows[i];
            seen.insert(spec.id);
            if (!wanted.empty() && wanted.count(spec.id) == 0) continue;
            FlowRuntime rt;
            rt.config_index = i;
            rt.spec = &spec;
            flows.push_back(rt);
        }
        for (const auto& id : wanted) {
            if (seen.count(id) == 0) {
                throw BundleError("flow '" + id + "' is not part of the bundle's scenario");
            }
        }
    }

    TopologySnapshot state = bundle.initial;
    for (auto& rt : flows) {
        if (rt.config_index < state.routing.flow_paths.size()) {
            rt.path = state.routing.flow_paths[rt.config_index];
        }
    }

    PlaybackResult result;
    result.processing_ms.reserve(bundle.tick_count);

    using Clock = std::chrono::steady_clock;
    const auto interval = std::chrono::milliseconds(bundle.interval_ms);
    const auto start_wall = Clock::now();

    for (std::uint32_t tick = 0; tick < bundle.tick_count; ++tick) {
        if (options.mode == PlaybackMode::Realtime) {
            std::this_thread::sleep_until(start_wall + tick * interval);
        }
        const auto tick_begin = Clock::now();
        result.tick_start_offset_ms.push_back(
            std::chrono::duration<double, std::milli>(tick_begin - start_wall).count());
        const UtcMillis t = bundle.start + static_cast<UtcMillis>(tick) * bundle.interval_ms;

        if (tick > 0) {
            const LinkDelta& delta = bundle.deltas[tick - 1];
            for (const Edge& e : delta.removed) {
                SimEvent ev{tick, t, SimEvent::Kind::LinkDown, {}};
                ev.payload["i"] = e.a;
                ev.payload["j"] = e.b;
                ev.payload["a"] = index.nodes[e.a].name;
                ev.payload["b"] = index.nodes[e.b].name;
                emit(std::move(ev), result);
            }
            for (const LinkRecord& l : delta.added) {
                SimEvent ev{tick, t, SimEvent::Kind::LinkUp, {}};
                ev.payload["i"] = l.i;
                ev.payload["j"] = l.j;
                ev.payload["a"] = index.nodes[l.i].name;
                ev.payload["b"] = index.nodes[l.j].name;
                ev.payload["latency_ms"] = l.latency_ms;
                ev.payload["capacity_mbps"] = l.capacity_mbps;
                emit(std::move(ev), result);
            }
            for (const LinkRecord& l : delta.modified) {
                SimEvent ev{tick, t, SimEvent::Kind::LinkModified, {}};
                ev.payload["i"] = l.i;
                ev.payload["j"] = l.j;
                ev.payload["latency_ms"] = l.latency_ms;
                ev.payload["capacity_mbps"] = l.capacity_mbps;
                emit(std::move(ev), result);
            }
            state = apply_delta(state, delta);

            for (auto& rt : flows) {
                for (const auto& pc : delta.path_changes) {
                    if (pc.flow_index != rt.config_index) continue;
                    SimEvent ev{tick, t, SimEvent::Kind::PathChange, {}};
                    ev.payload["flow"] = rt.spec->id;
                    ev.payload["old_path"] = path_names(pc.old_path, index);
                    ev.payload["new_path"] = path_names(pc.new_path, index);
                    ev.payload["old_hops"] =
                        pc.old_path ? nlohmann::ordered_json(pc.old_path->size() - 1) : nullptr;
                    ev.payload["new_hops"] =
                        pc.new_path ? nlohmann::ordered_json(pc.new_path->size() - 1) : nullptr;
                    emit(std::move(ev), result);
                    rt.path = pc.new_path;
                    rt.last_change_tick = tick;
                }
            }
        }

        const LatencyMatrix lm = latency_view(state);
        const CapacityMatrix cm = capacity_view(state);
        const double offset_s = static_cast<double>(tick) * bundle.interval_ms / 1000.0;

        std::vector<AllocFlow> alloc_in(flows.size());
        std::vector<bool> is_active(flows.size(), false);
        std::vector<bool> disrupted(flows.size(), false);
        for (std::size_t f = 0; f < flows.size(); ++f) {
            const FlowRuntime& rt = flows[f];
            is_active[f] = offset_s >= rt.spec->start_s &&
                           offset_s < rt.spec->start_s + rt.spec->duration_s;
            if (!is_active[f]) continue;
            disrupted[f] = rt.last_change_tick &&
                           disruption_active(tick, *rt.last_change_tick,
                                             rt.spec->disruption_window_ms, bundle.interval_ms);
            if (disrupted[f]) continue; // not transmitting during the outage
            if (rt.path && rt.path->size() >= 2) {
                alloc_in[f].routed = true;
                alloc_in[f].demand_mbps = rt.spec->demand_mbps;
                for (std::size_t i = 0; i + 1 < rt.path->size(); ++i) {
                    alloc_in[f].links.emplace_back((*rt.path)[i], (*rt.path)[i + 1]);
                }
            }
        }
        const std::vector<double> rates = allocate_throughput(alloc_in, cm);

        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (!is_active[f]) continue;
            const FlowRuntime& rt = flows[f];
            const auto rtt = probe_rtt_ms(rt.path, lm);
            SimEvent ev{tick, t, SimEvent::Kind::FlowStats, {}};
            ev.payload["flow"] = rt.spec->id;
            ev.payload["rate_mbps"] = disrupted[f] ? 0.0 : rates[f];
            ev.payload["latency_ms"] = rtt ? nlohmann::ordered_json(*rtt / 2.0) : nullptr;
            ev.payload["hops"] =
                rt.path ? nlohmann::ordered_json(rt.path->size() - 1) : nullptr;
            emit(std::move(ev), result);
        }
        for (std::size_t f = 0; f < flows.size(); ++f) {
            if (!is_active[f]) continue;
            const FlowRuntime& rt = flows[f];
            const auto rtt = probe_rtt_ms(rt.path, lm);
            SimEvent ev{tick, t, SimEvent::Kind::ProbeResult, {}};
            ev.payload["flow"] = rt.spec->id;
            ev.payload["loss"] = !rtt.has_value();
            if (rtt) ev.payload["rtt_ms"] = *rtt;
            emit(std::move(ev), result);
        }

        if (options.export_routes_dir) {
            export_route_commands(state.routing, t, *options.export_routes_dir);
        }

        const double processing_ms =
            std::chrono::duration<double, std::milli>(Clock::now() - tick_begin).count();
        result.processing_ms.push_back(processing_ms);
        if (options.mode == PlaybackMode::Realtime) {
            SimEvent ev{tick, t, SimEvent::Kind::TickLag, {}};
            ev.payload["processing_ms"] = processing_ms;
            ev.payload["interval_ms"] = bundle.interval_ms;
            emit(std::move(ev), result);
        }
    }

    // The simulated window covers tick_count full intervals; realtime
    // playback holds the wall clock through the end of the window.
    if (options.mode == PlaybackMode::Realtime) {
        std::this_thread::sleep_until(start_wall + bundle.tick_count * interval);
    }
    result.wall_elapsed_ms =
        std::chrono::duration<double, std::milli>(Clock::now() - start_wall).count();
    return result;
}

} // namespace leosim
