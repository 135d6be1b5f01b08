#include "acqgraph/graph.hpp"

#include <algorithm>
#include <tuple>

#include "acqgraph/errors.hpp"

namespace acqgraph {

bool is_directed(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Acquisition:
        case NetworkKind::CrossCity:
        case NetworkKind::CrossBorder:
            return true;
        case NetworkKind::CommonAcquirer:
        case NetworkKind::CommonAcquiree:
            return false;
    }
    return true;
}

std::string to_string(NetworkKind kind) {
    switch (kind) {
        case NetworkKind::Acquisition: return "acquisition";
        case NetworkKind::CommonAcquirer: return "common-acquirer";
        case NetworkKind::CommonAcquiree: return "common-acquiree";
        case NetworkKind::CrossCity: return "cross-city";
        case NetworkKind::CrossBorder: return "cross-border";
    }
    return "acquisition";
}

std::optional<NetworkKind> network_kind_from_string(std::string_view name) {
    if (name == "acquisition") return NetworkKind::Acquisition;
    if (name == "common-acquirer") return NetworkKind::CommonAcquirer;
    if (name == "common-acquiree") return NetworkKind::CommonAcquiree;
    if (name == "cross-city") return NetworkKind::CrossCity;
    if (name == "cross-border") return NetworkKind::CrossBorder;
    return std::nullopt;
}

NodeId AttributedGraph::add_node(const std::string& key) {
    const auto it = index_.find(key);
    if (it != index_.end()) return it->second;
    const NodeId id = static_cast<NodeId>(keys_.size());
    index_.emplace(key, id);
    keys_.push_back(key);
    attrs_.emplace_back();
    out_.emplace_back();
    if (directed_) in_.emplace_back();
    return id;
}

NodeId AttributedGraph::add_node(const std::string& key,
                                 NodeAttributes attributes) {
    const NodeId id = add_node(key);
    attrs_[id] = std::move(attributes);
    return id;
}

void AttributedGraph::add_edge(NodeId u, NodeId v, Weight w) {
    if (u == v && !allow_self_loops_) {
        throw DataError("self-loop rejected: " + keys_[u]);
    }
    if (w <= 0) throw DataError("edge weight must be positive");
    if (!directed_ && u > v) std::swap(u, v);
    Weight& slot = out_[u][v];
    if (slot == 0) {
        ++edge_count_;
        if (u == v) ++self_loop_count_;
    }
    slot += w;
    total_weight_ += w;
    if (directed_) {
        in_[v][u] += w;
    } else if (u != v) {
        out_[v][u] += w;
    }
}

void AttributedGraph::add_edge(const std::string& u, const std::string& v,
                               Weight w) {
    add_edge(add_node(u), add_node(v), w);
}

std::optional<NodeId> AttributedGraph::find(std::string_view key) const {
    const auto it = index_.find(std::string(key));
    return it == index_.end() ? std::nullopt : std::optional<NodeId>(it->second);
}

NodeId AttributedGraph::require(std::string_view key) const {
    const auto id = find(key);
    if (!id) throw DataError("unknown node: " + std::string(key));
    return *id;
}

Weight AttributedGraph::weight(NodeId u, NodeId v) const {
    if (!directed_ && u > v) std::swap(u, v);
    const auto& adj = out_[u];
    const auto it = adj.find(v);
    return it == adj.end() ? 0 : it->second;
}

std::vector<AttributedGraph::Edge> AttributedGraph::edges() const {
    std::vector<Edge> result;
    result.reserve(edge_count_);
    for (NodeId u = 0; u < keys_.size(); ++u) {
        for (const auto& [v, w] : out_[u]) {
            if (!directed_ && v < u) continue;  // canonical copy lives at u<=v
            result.push_back({u, v, w});
        }
    }
    return result;
}

std::size_t AttributedGraph::out_degree(NodeId id) const {
    const auto& adj = out_[id];
    return adj.size() - adj.count(id);
}

std::size_t AttributedGraph::in_degree(NodeId id) const {
    const auto& adj = directed_ ? in_[id] : out_[id];
    return adj.size() - adj.count(id);
}

std::size_t AttributedGraph::total_degree(NodeId id) const {
    return directed_ ? out_degree(id) + in_degree(id) : out_degree(id);
}

bool AttributedGraph::operator==(const AttributedGraph& other) const {
    if (directed_ != other.directed_ || node_count() != other.node_count() ||
        edge_count() != other.edge_count()) {
        return false;
    }
    using KeyEdge = std::tuple<std::string, std::string, Weight>;
    auto canonical = [](const AttributedGraph& g) {
        std::vector<std::pair<std::string, const NodeAttributes*>> nodes;
        nodes.reserve(g.node_count());
        for (NodeId id = 0; id < g.node_count(); ++id) {
            nodes.emplace_back(g.key_of(id), &g.attributes(id));
        }
        std::sort(nodes.begin(), nodes.end(),
                  [](const auto& a, const auto& b) { return a.first < b.first; });
        std::vector<KeyEdge> edges;
        edges.reserve(g.edge_count());
        for (const auto& e : g.edges()) {
            edges.emplace_back(g.key_of(e.source), g.key_of(e.target), e.weight);
        }
        std::sort(edges.begin(), edges.end());
        return std::make_pair(std::move(nodes), std::move(edges));
    };
    const auto [nodes_a, edges_a] = canonical(*this);
    const auto [nodes_b, edges_b] = canonical(other);
    if (edges_a != edges_b) return false;
    for (std::size_t i = 0; i < nodes_a.size(); ++i) {
        if (nodes_a[i].first != nodes_b[i].first ||
            !(*nodes_a[i].second == *nodes_b[i].second)) {
            return false;
        }
    }
    return true;
}

AttributedGraph induced_subgraph(const AttributedGraph& g,
                                 const std::vector<NodeId>& nodes) {
    AttributedGraph sub(g.directed(), g.allows_self_loops());
    std::unordered_map<NodeId, NodeId> remap;
    remap.reserve(nodes.size());
    for (const NodeId id : nodes) {
        remap.emplace(id, sub.add_node(g.key_of(id), g.attributes(id)));
    }
    for (const NodeId u : nodes) {
        for (const auto& [v, w] : g.out_neighbors(u)) {
            if (!g.directed() && v < u) continue;
            const auto it = remap.find(v);
            if (it != remap.end()) sub.add_edge(remap.at(u), it->second, w);
        }
    }
    return sub;
}

AttributedGraph strip_self_loops(const AttributedGraph& g) {
    AttributedGraph out(g.directed(), false);
    for (NodeId id = 0; id < g.node_count(); ++id) {
        out.add_node(g.key_of(id), g.attributes(id));
    }
    for (const auto& e : g.edges()) {
        if (e.source != e.target) out.add_edge(e.source, e.target, e.weight);
    }
    return out;
}

}  // namespace acqgraph
