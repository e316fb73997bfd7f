#include "leosim/snapshot.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace leosim {

LinkDelta diff_snapshots(const TopologySnapshot& prev, const TopologySnapshot& next,
                         double eps_latency_ms, double eps_capacity_mbps) {
    if (prev.node_count != next.node_count) {
        throw std::invalid_argument("snapshot dimensions differ");
    }
    LinkDelta delta;
    delta.t = next.t;

    // Both link lists are sorted by (i, j): one merge pass.
    std::size_t a = 0, b = 0;
    while (a < prev.links.size() || b < next.links.size()) {
        if (a == prev.links.size()) {
            delta.added.push_back(next.links[b++]);
        } else if (b == next.links.size()) {
            delta.removed.push_back(prev.links[a++].edge());
        } else {
            const Edge ea = prev.links[a].edge();
            const Edge eb = next.links[b].edge();
            if (ea < eb) {
                delta.removed.push_back(ea);
                ++a;
            } else if (eb < ea) {
                delta.added.push_back(next.links[b]);
                ++b;
            } else {
                const LinkRecord& p = prev.links[a];
                const LinkRecord& n = next.links[b];
                if (std::abs(n.latency_ms - p.latency_ms) > eps_latency_ms ||
                    std::abs(n.capacity_mbps - p.capacity_mbps) > eps_capacity_mbps) {
                    delta.modified.push_back(n);
                }
                ++a;
                ++b;
            }
        }
    }

    // Routing table comparison: std::map iterates both sides in key order.
    {
        auto pa = prev.routing.next_hop.begin();
        auto pb = next.routing.next_hop.begin();
        const auto ea = prev.routing.next_hop.end();
        const auto eb = next.routing.next_hop.end();
        while (pa != ea || pb != eb) {
            if (pa == ea || (pb != eb && pb->first < pa->first)) {
                delta.routing_changes.push_back({pb->first.first, pb->first.second, pb->second});
                ++pb;
            } else if (pb == eb || pa->first < pb->first) {
                delta.routing_changes.push_back({pa->first.first, pa->first.second, std::nullopt});
                ++pa;
            } else {
                if (pa->second != pb->second) {
                    delta.routing_changes.push_back(
                        {pb->first.first, pb->first.second, pb->second});
                }
                ++pa;
                ++pb;
            }
        }
    }

    const std::size_t flows =
        std::max(prev.routing.flow_paths.size(), next.routing.flow_paths.size());
    for (std::size_t f = 0; f < flows; ++f) {
        const auto& oldp = f < prev.routing.flow_paths.size() ? prev.routing.flow_paths[f]
                                                              : std::optional<std::vector<std::uint32_t>>{};
        const auto& newp = f < next.routing.flow_paths.size() ? next.routing.flow_paths[f]
                                                              : std::optional<std::vector<std::uint32_t>>{};
        if (oldp != newp) {
            delta.path_changes.push_back({static_cast<std::uint32_t>(f), oldp, newp});
        }
    }

    const std::size_t grounds = std::max(prev.attachments.size(), next.attachments.size());
    for (std::size_t g = 0; g < grounds; ++g) {
        const AttachmentState olds = g < prev.attachments.size() ? prev.attachments[g]
                                                                 : AttachmentState{};
        const AttachmentState news = g < next.attachments.size() ? next.attachments[g]
                                                                 : AttachmentState{};
        if (!(olds == news)) {
            delta.attachment_changes.push_back({static_cast<std::uint32_t>(g), news});
        }
    }
    return delta;
}

TopologySnapshot apply_delta(const TopologySnapshot& snapshot, const LinkDelta& delta) {
    TopologySnapshot next = snapshot;
    next.t = delta.t;
    next.routing.t = delta.t;

    if (!delta.removed.empty() || !delta.added.empty() || !delta.modified.empty()) {
        std::map<Edge, LinkRecord> links;
        for (const auto& l : next.links) links[l.edge()] = l;
        for (const Edge& e : delta.removed) links.erase(e);
        for (const auto& l : delta.added) links[l.edge()] = l;
        for (const auto& l : delta.modified) links[l.edge()] = l;
        next.links.clear();
        next.links.reserve(links.size());
        for (const auto& [edge, rec] : links) next.links.push_back(rec);
    }

    for (const auto& rc : delta.routing_changes) {
        if (rc.next) {
            next.routing.next_hop[{rc.node, rc.dest}] = *rc.next;
        } else {
            next.routing.next_hop.erase({rc.node, rc.dest});
        }
    }
    for (const auto& pc : delta.path_changes) {
        if (next.routing.flow_paths.size() <= pc.flow_index) {
            next.routing.flow_paths.resize(pc.flow_index + 1);
        }
        next.routing.flow_paths[pc.flow_index] = pc.new_path;
    }
    for (const auto& ac : delta.attachment_changes) {
        if (next.attachments.size() <= ac.ground) next.attachments.resize(ac.ground + 1);
        next.attachments[ac.ground] = ac.state;
    }
    return next;
}

} // namespace leosim
