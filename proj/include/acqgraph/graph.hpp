#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace acqgraph {

using NodeId = std::uint32_t;
using Weight = std::int64_t;

enum class NetworkKind {
    Acquisition,
    CommonAcquirer,
    CommonAcquiree,
    CrossCity,
    CrossBorder,
};

bool is_directed(NetworkKind kind);
std::string to_string(NetworkKind kind);
std::optional<NetworkKind> network_kind_from_string(std::string_view name);

// Node attributes split by type: labels for categorical features, numbers for
// ordered ones (founded_month). Any subset may be present.
struct NodeAttributes {
    std::map<std::string, std::string> labels;
    std::map<std::string, double> numbers;

    bool operator==(const NodeAttributes&) const = default;
};

// Weighted simple graph (directed or undirected) with per-node attributes.
// Parallel edges aggregate into the weight; undirected edges are stored
// canonically with u <= v. Treated as immutable once a builder returns it.
class AttributedGraph {
public:
    explicit AttributedGraph(bool directed, bool allow_self_loops = false)
        : directed_(directed), allow_self_loops_(allow_self_loops) {}

    bool directed() const { return directed_; }
    bool allows_self_loops() const { return allow_self_loops_; }

    NodeId add_node(const std::string& key);
    NodeId add_node(const std::string& key, NodeAttributes attributes);
    // Aggregates weight onto the (canonicalized) edge. Rejects self-loops
    // unless the graph allows them.
    void add_edge(NodeId u, NodeId v, Weight w = 1);
    void add_edge(const std::string& u, const std::string& v, Weight w = 1);

    std::size_t node_count() const { return keys_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    std::size_t self_loop_count() const { return self_loop_count_; }
    Weight total_edge_weight() const { return total_weight_; }

    const std::string& key_of(NodeId id) const { return keys_[id]; }
    std::optional<NodeId> find(std::string_view key) const;
    NodeId require(std::string_view key) const;

    const NodeAttributes& attributes(NodeId id) const { return attrs_[id]; }
    NodeAttributes& attributes(NodeId id) { return attrs_[id]; }

    // Sorted by target id. For undirected graphs out and in views coincide
    // and contain each neighbor once (self-loops once, under their own key).
    const std::map<NodeId, Weight>& out_neighbors(NodeId id) const {
        return out_[id];
    }
    const std::map<NodeId, Weight>& in_neighbors(NodeId id) const {
        return directed_ ? in_[id] : out_[id];
    }

    // 0 when the edge is absent; undirected lookups are canonicalized.
    Weight weight(NodeId u, NodeId v) const;

    struct Edge {
        NodeId source;
        NodeId target;
        Weight weight;
    };
    // Each edge exactly once, ordered by (source, target) id.
    std::vector<Edge> edges() const;

    // Distinct-edge degree, self-loops excluded.
    std::size_t out_degree(NodeId id) const;
    std::size_t in_degree(NodeId id) const;
    std::size_t total_degree(NodeId id) const;

    // Key-based comparison, so two graphs built in different node orders
    // compare equal when they describe the same attributed network.
    bool operator==(const AttributedGraph& other) const;

private:
    bool directed_;
    bool allow_self_loops_;
    std::vector<std::string> keys_;
    std::unordered_map<std::string, NodeId> index_;
    std::vector<NodeAttributes> attrs_;
    std::vector<std::map<NodeId, Weight>> out_;
    std::vector<std::map<NodeId, Weight>> in_;  // directed only
    std::size_t edge_count_ = 0;
    std::size_t self_loop_count_ = 0;
    Weight total_weight_ = 0;
};

// Induced subgraph on the given nodes (attributes and directedness kept).
AttributedGraph induced_subgraph(const AttributedGraph& g,
                                 const std::vector<NodeId>& nodes);

// Copy without self-loop edges; node set unchanged.
AttributedGraph strip_self_loops(const AttributedGraph& g);

}  // namespace acqgraph
