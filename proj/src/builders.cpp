#include "acqgraph/builders.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>

#include "acqgraph/errors.hpp"

namespace acqgraph {

namespace {

NodeAttributes org_attributes(const OrgRecord& org) {
    NodeAttributes attrs;
    attrs.labels["country"] = org.country;
    attrs.labels["region"] = org.region;
    attrs.labels["city"] = org.city;
    if (org.primary_category) attrs.labels["category"] = *org.primary_category;
    if (org.primary_category_group) {
        attrs.labels["category_group"] = *org.primary_category_group;
    }
    attrs.numbers["founded_month"] = static_cast<double>(org.founded_month);
    return attrs;
}

using OrgIndex = std::unordered_map<std::string, const OrgRecord*>;

OrgIndex index_orgs(const std::vector<OrgRecord>& orgs) {
    OrgIndex index;
    index.reserve(orgs.size());
    for (const auto& org : orgs) index.emplace(org.org_id, &org);
    return index;
}

const OrgRecord& require_org(const OrgIndex& index, const std::string& id) {
    const auto it = index.find(id);
    if (it == index.end()) {
        throw DataError("acquisition references unknown org: " + id);
    }
    return *it->second;
}

// Shared core of the two one-mode projections: for every hub (an acquirer in
// the common-acquirer case), each pair of distinct spokes gains weight 1, so
// the final weight is the number of shared hubs.
AttributedGraph project(const std::vector<AcquisitionEvent>& events,
                        const OrgIndex* orgs, bool hub_is_acquirer) {
    std::map<std::string, std::set<std::string>> spokes_by_hub;
    std::set<std::string> spoke_keys;
    for (const auto& event : events) {
        const std::string& hub =
            hub_is_acquirer ? event.acquirer_id : event.acquiree_id;
        const std::string& spoke =
            hub_is_acquirer ? event.acquiree_id : event.acquirer_id;
        spokes_by_hub[hub].insert(spoke);
        spoke_keys.insert(spoke);
    }

    AttributedGraph g(/*directed=*/false);
    for (const auto& key : spoke_keys) {
        if (orgs) {
            g.add_node(key, org_attributes(require_org(*orgs, key)));
        } else {
            g.add_node(key);
        }
    }
    for (const auto& [hub, spokes] : spokes_by_hub) {
        for (auto it = spokes.begin(); it != spokes.end(); ++it) {
            for (auto jt = std::next(it); jt != spokes.end(); ++jt) {
                g.add_edge(g.require(*it), g.require(*jt), 1);
            }
        }
    }
    return g;
}

}  // namespace

AttributedGraph build_acquisition(const std::vector<OrgRecord>& orgs,
                                  const std::vector<AcquisitionEvent>& events) {
    const OrgIndex index = index_orgs(orgs);
    AttributedGraph g(/*directed=*/true);
    for (const auto& event : events) {
        const OrgRecord& acquirer = require_org(index, event.acquirer_id);
        const OrgRecord& acquiree = require_org(index, event.acquiree_id);
        const NodeId u = g.add_node(acquirer.org_id, org_attributes(acquirer));
        const NodeId v = g.add_node(acquiree.org_id, org_attributes(acquiree));
        g.add_edge(u, v, 1);
    }
    return g;
}

AttributedGraph build_common_acquirer(const std::vector<AcquisitionEvent>& events) {
    return project(events, nullptr, /*hub_is_acquirer=*/true);
}

AttributedGraph build_common_acquirer(const std::vector<OrgRecord>& orgs,
                                      const std::vector<AcquisitionEvent>& events) {
    const OrgIndex index = index_orgs(orgs);
    return project(events, &index, /*hub_is_acquirer=*/true);
}

AttributedGraph build_common_acquiree(const std::vector<AcquisitionEvent>& events) {
    return project(events, nullptr, /*hub_is_acquirer=*/false);
}

AttributedGraph build_common_acquiree(const std::vector<OrgRecord>& orgs,
                                      const std::vector<AcquisitionEvent>& events) {
    const OrgIndex index = index_orgs(orgs);
    return project(events, &index, /*hub_is_acquirer=*/false);
}

std::string city_node_key(const OrgRecord& org) {
    return org.city + "|" + org.region + "|" + org.country;
}

namespace {

AttributedGraph build_place_graph(const std::vector<OrgRecord>& orgs,
                                  const std::vector<AcquisitionEvent>& events,
                                  bool by_city) {
    const OrgIndex index = index_orgs(orgs);
    AttributedGraph g(/*directed=*/true, /*allow_self_loops=*/true);
    auto place_node = [&](const OrgRecord& org) {
        NodeAttributes attrs;
        attrs.labels["country"] = org.country;
        if (by_city) {
            attrs.labels["region"] = org.region;
            attrs.labels["city"] = org.city;
            return g.add_node(city_node_key(org), std::move(attrs));
        }
        return g.add_node(org.country, std::move(attrs));
    };
    for (const auto& event : events) {
        const NodeId u = place_node(require_org(index, event.acquirer_id));
        const NodeId v = place_node(require_org(index, event.acquiree_id));
        g.add_edge(u, v, 1);
    }
    return g;
}

}  // namespace

AttributedGraph build_cross_city(const std::vector<OrgRecord>& orgs,
                                 const std::vector<AcquisitionEvent>& events) {
    return build_place_graph(orgs, events, /*by_city=*/true);
}

AttributedGraph build_cross_border(const std::vector<OrgRecord>& orgs,
                                   const std::vector<AcquisitionEvent>& events) {
    return build_place_graph(orgs, events, /*by_city=*/false);
}

AttributedGraph undirected_view(const AttributedGraph& g) {
    if (!g.directed()) {
        throw DataError("undirected_view requires a directed graph");
    }
    AttributedGraph out(/*directed=*/false);
    for (NodeId id = 0; id < g.node_count(); ++id) {
        out.add_node(g.key_of(id), g.attributes(id));
    }
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        out.add_edge(e.source, e.target, e.weight);
    }
    return out;
}

AttributedGraph as_undirected(const AttributedGraph& g) {
    return g.directed() ? undirected_view(g) : g;
}

AttributedGraph subgraph_top_degree(const AttributedGraph& g, std::size_t k) {
    std::vector<NodeId> order(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) order[id] = id;
    std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
        const std::size_t da = g.total_degree(a), db = g.total_degree(b);
        if (da != db) return da > db;
        return g.key_of(a) < g.key_of(b);
    });
    order.resize(std::min(k, order.size()));
    return induced_subgraph(g, order);
}

AttributedGraph build_network(NetworkKind kind,
                              const std::vector<OrgRecord>& orgs,
                              const std::vector<AcquisitionEvent>& events) {
    switch (kind) {
        case NetworkKind::Acquisition: return build_acquisition(orgs, events);
        case NetworkKind::CommonAcquirer: return build_common_acquirer(orgs, events);
        case NetworkKind::CommonAcquiree: return build_common_acquiree(orgs, events);
        case NetworkKind::CrossCity: return build_cross_city(orgs, events);
        case NetworkKind::CrossBorder: return build_cross_border(orgs, events);
    }
    throw DataError("unknown network kind");
}

}  // namespace acqgraph
