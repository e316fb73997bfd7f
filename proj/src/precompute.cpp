#include "leosim/precompute.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "leosim/errors.hpp"
#include "leosim/tle.hpp"
#include "leosim/walker.hpp"

namespace leosim {

namespace {

std::vector<OrbitalElements> load_elements(const ScenarioConfig& config) {
    if (config.walker) {
        const auto& w = *config.walker;
        return generate_walker(w.orbits, w.sats_per_orbit, w.altitude_km, w.inclination_deg,
                               w.phasing, config.start_epoch);
    }
    std::ifstream in(*config.tle_file, std::ios::binary);
    if (!in) throw ConfigError("scenario: satellite_source: cannot open TLE file '" +
                               *config.tle_file + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_tle(buf.str());
}

} // namespace

ScenarioModel ScenarioModel::build(const ScenarioConfig& config) {
    ScenarioModel m;
    m.config = config;
    m.elements = load_elements(config);
    m.geometry = group_orbits(m.elements);
    m.node_index = NodeIndex::build(m.geometry, m.elements, config.ground_segments);

    m.grounds.reserve(config.ground_segments.size());
    for (std::uint32_t g = 0; g < config.ground_segments.size(); ++g) {
        m.grounds.push_back(GroundSite::from_segment(config.ground_segments[g],
                                                     m.node_index.satellite_count + g));
    }

    m.topology.pattern = config.isl_pattern;
    m.topology.limits.max_range_km = config.isl_max_range_km;
    m.topology.limits.latitude_mask_deg = config.isl_latitude_mask_deg;
    m.topology.min_elevation_deg = config.gsl_min_elevation_deg;
    m.topology.handover = config.handover;
    m.topology.cross_index_offset = config.isl_cross_index_offset;

    for (const auto& flow : config.flows) {
        const auto src = m.node_index.find(flow.src);
        const auto dst = m.node_index.find(flow.dst);
        if (!src || !dst) {
            throw ConfigError("scenario: flow '" + flow.id + "' references an unknown endpoint");
        }
        m.flow_pairs.emplace_back(*src, *dst);
    }

    m.total_isl_count = static_cast<std::uint32_t>(
        build_isl_pattern(m.geometry, config.isl_pattern, m.topology.cross_index_offset).size());
    return m;
}

TopologySnapshot ScenarioModel::compute_snapshot(std::uint32_t tick, const Propagator& propagator,
                                                 WeatherProvider& weather,
                                                 const std::vector<AttachmentState>& prior,
                                                 std::vector<std::string>* warnings) const {
    const UtcMillis t = tick_time(tick);

    std::vector<SatelliteState> states(node_index.satellite_count);
    for (std::uint32_t s = 0; s < node_index.satellite_count; ++s) {
        states[s] = propagator.propagate(elements[node_index.nodes[s].ref], t);
    }

    const ConnectivityResult conn =
        build_connectivity(t, geometry, states, grounds, topology, node_index, prior);
    LinkCharacterization chars = characterize(conn.matrix, states, grounds, config.rf, weather, t,
                                              node_index.satellite_count);
    if (warnings != nullptr) {
        for (auto& w : chars.warnings) warnings->push_back(std::move(w));
    }

    const WeightedGraph graph = build_graph(chars.latency, chars.capacity, config.route_metric);
    RoutingTable routing = build_routing_tables(graph, flow_pairs, t, config.all_pairs_routing);

    TopologySnapshot snap;
    snap.t = t;
    snap.node_count = node_index.size();
    snap.links.reserve(conn.matrix.edges.size());
    for (std::size_t k = 0; k < conn.matrix.edges.size(); ++k) {
        snap.links.push_back({conn.matrix.edges[k].a, conn.matrix.edges[k].b,
                              chars.latency.values[k], chars.capacity.values[k],
                              chars.snr_db[k]});
    }
    snap.routing = std::move(routing);
    snap.attachments = conn.attachments;
    return snap;
}

void RelevanceAccumulator::add(
    const RoutingTable& routing,
    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& flow_pairs) {
    for (const auto& [src, dst] : flow_pairs) {
        mask_.nodes[src] = true;
        mask_.nodes[dst] = true;
    }
    for (const auto& path : routing.flow_paths) {
        if (!path) continue;
        for (std::size_t i = 0; i < path->size(); ++i) {
            mask_.nodes[(*path)[i]] = true;
            if (i + 1 < path->size()) mask_.links.insert(Edge{(*path)[i], (*path)[i + 1]});
        }
    }
}

RelevanceMask RelevanceAccumulator::finish(bool enabled) && {
    mask_.enabled = enabled;
    return std::move(mask_);
}

TopologySnapshot restrict_snapshot(const TopologySnapshot& snapshot, const RelevanceMask& mask) {
    if (!mask.enabled) return snapshot;
    TopologySnapshot out;
    out.t = snapshot.t;
    out.node_count = snapshot.node_count;
    for (const auto& link : snapshot.links) {
        if (mask.covers(link.edge())) out.links.push_back(link);
    }
    // Keyed on (node, destination) only: the kept/dropped decision must
    // not depend on the entry's value, or projection stops commuting
    // with delta application.
    out.routing.t = snapshot.routing.t;
    for (const auto& [key, next] : snapshot.routing.next_hop) {
        if (mask.nodes[key.first] && mask.nodes[key.second]) {
            out.routing.next_hop.emplace(key, next);
        }
    }
    out.routing.flow_paths = snapshot.routing.flow_paths;
    out.attachments = snapshot.attachments;
    for (std::size_t g = 0; g < out.attachments.size(); ++g) {
        const std::uint32_t ground_node =
            static_cast<std::uint32_t>(snapshot.node_count - out.attachments.size() + g);
        if (ground_node < mask.nodes.size() && !mask.nodes[ground_node]) {
            out.attachments[g] = AttachmentState{};
        }
    }
    return out;
}

LinkDelta restrict_delta(const LinkDelta& delta, const RelevanceMask& mask) {
    if (!mask.enabled) return delta;
    LinkDelta out;
    out.t = delta.t;
    for (const auto& l : delta.added) {
        if (mask.covers(l.edge())) out.added.push_back(l);
    }
    for (const auto& e : delta.removed) {
        if (mask.covers(e)) out.removed.push_back(e);
    }
    for (const auto& l : delta.modified) {
        if (mask.covers(l.edge())) out.modified.push_back(l);
    }
    for (const auto& rc : delta.routing_changes) {
        if (mask.nodes[rc.node] && mask.nodes[rc.dest]) {
            out.routing_changes.push_back(rc);
        }
    }
    out.path_changes = delta.path_changes;
    out.attachment_changes = delta.attachment_changes;
    return out;
}

ScenarioBundle precompute(const ScenarioConfig& config, WeatherProvider& weather,
                          const PrecomputeOptions& options) {
    const KeplerianPropagator default_propagator;
    const Propagator& propagator =
        options.propagator != nullptr ? *options.propagator : default_propagator;

    const ScenarioModel model = ScenarioModel::build(config);
    const std::uint32_t ticks = config.tick_count();

    ScenarioBundle bundle;
    bundle.config = config;
    bundle.config_yaml = serialize_scenario(config);
    bundle.node_index = model.node_index;
    bundle.start = config.start_epoch;
    bundle.interval_ms = static_cast<std::uint32_t>(config.update_interval_ms);
    bundle.tick_count = ticks;
    bundle.total_isl_count = model.total_isl_count;

    RelevanceAccumulator relevance(model.node_index.size());
    std::vector<std::string> warnings;

    TopologySnapshot folded;
    std::vector<AttachmentState> attachments;
    std::vector<LinkDelta> deltas;
    for (std::uint32_t k = 0; k < ticks; ++k) {
        TopologySnapshot snap;
        try {
            snap = model.compute_snapshot(k, propagator, weather, attachments, &warnings);
        } catch (const std::exception& e) {
            throw std::runtime_error("precompute failed at tick " + std::to_string(k) + " (t=" +
                                     format_iso8601(model.tick_time(k)) + "): " + e.what());
        }
        attachments = snap.attachments;
        relevance.add(snap.routing, model.flow_pairs);
        if (options.warning_sink) {
            for (const auto& w : warnings) options.warning_sink(w);
        }
        warnings.clear();

        if (k == 0) {
            folded = snap;
            bundle.initial = std::move(snap);
        } else {
            // Diff against the folded chain, not the raw previous
            // snapshot, so replaying the deltas reproduces the chain
            // bit-exactly at any threshold setting.
            LinkDelta delta = diff_snapshots(folded, snap, config.delta_eps_latency_ms,
                                             config.delta_eps_capacity_mbps);
            folded = apply_delta(folded, delta);
            deltas.push_back(std::move(delta));
        }
        if (options.progress) options.progress(k + 1, ticks);
    }

    bundle.relevance = std::move(relevance).finish(config.relevance_filter);
    if (bundle.relevance.enabled) {
        bundle.initial = restrict_snapshot(bundle.initial, bundle.relevance);
        for (auto& d : deltas) d = restrict_delta(d, bundle.relevance);
    }
    bundle.deltas = std::move(deltas);
    return bundle;
}

std::vector<TopologySnapshot> compute_all_snapshots(const ScenarioConfig& config,
                                                    WeatherProvider& weather,
                                                    const Propagator* propagator) {
    const KeplerianPropagator default_propagator;
    const Propagator& prop = propagator != nullptr ? *propagator : default_propagator;
    const ScenarioModel model = ScenarioModel::build(config);

    std::vector<TopologySnapshot> out;
    std::vector<AttachmentState> attachments;
    for (std::uint32_t k = 0; k < config.tick_count(); ++k) {
        out.push_back(model.compute_snapshot(k, prop, weather, attachments));
        attachments = out.back().attachments;
    }
    return out;
}

} // namespace leosim
