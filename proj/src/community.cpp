#include "acqgraph/community.hpp"

#include <algorithm>
#include <numeric>

#include "acqgraph/builders.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/rng.hpp"

namespace acqgraph {

namespace {

constexpr double kGainEps = 1e-12;

// Compact weighted undirected multigraph used across aggregation levels.
// Self-weights hold intra-community weight after aggregation.
struct LevelGraph {
    std::vector<std::map<int, double>> adj;  // neighbor -> weight, no self entries
    std::vector<double> self_weight;
    std::vector<double> strength;  // weighted degree incl. 2*self_weight
    double total_weight = 0.0;     // sum of edge weights, self included once

    std::size_t size() const { return adj.size(); }
};

LevelGraph level_from(const AttributedGraph& undirected) {
    LevelGraph lg;
    const std::size_t n = undirected.node_count();
    lg.adj.resize(n);
    lg.self_weight.assign(n, 0.0);
    lg.strength.assign(n, 0.0);
    for (const auto& e : undirected.edges()) {
        const double w = static_cast<double>(e.weight);
        if (e.source == e.target) {
            lg.self_weight[e.source] += w;
        } else {
            lg.adj[e.source][static_cast<int>(e.target)] += w;
            lg.adj[e.target][static_cast<int>(e.source)] += w;
        }
        lg.total_weight += w;
    }
    for (std::size_t u = 0; u < n; ++u) {
        double s = 2.0 * lg.self_weight[u];
        for (const auto& [v, w] : lg.adj[u]) s += w;
        lg.strength[u] = s;
    }
    return lg;
}

double level_modularity(const LevelGraph& lg, const std::vector<int>& community,
                        double resolution) {
    const double two_m = 2.0 * lg.total_weight;
    std::map<int, double> internal, total;
    for (std::size_t u = 0; u < lg.size(); ++u) {
        total[community[u]] += lg.strength[u];
        internal[community[u]] += 2.0 * lg.self_weight[u];
        for (const auto& [v, w] : lg.adj[u]) {
            if (community[static_cast<std::size_t>(v)] == community[u]) {
                internal[community[u]] += w;  // both endpoints add w once
            }
        }
    }
    double q = 0.0;
    for (const auto& [c, tot] : total) {
        q += internal[c] / two_m - resolution * (tot / two_m) * (tot / two_m);
    }
    return q;
}

// One local-move sweep phase: returns true when any node moved.
bool local_moves(const LevelGraph& lg, std::vector<int>& community,
                 double resolution, SplitMix64& rng) {
    const double two_m = 2.0 * lg.total_weight;
    std::vector<double> community_total(lg.size(), 0.0);
    for (std::size_t u = 0; u < lg.size(); ++u) {
        community_total[community[u]] += lg.strength[u];
    }
    std::vector<std::size_t> order(lg.size());
    std::iota(order.begin(), order.end(), 0);

    bool any_move = false;
    bool improved = true;
    while (improved) {
        improved = false;
        seeded_shuffle(order, rng);
        for (const std::size_t u : order) {
            const int old_comm = community[u];
            // weight from u to each neighboring community
            std::map<int, double> link;
            for (const auto& [v, w] : lg.adj[u]) {
                link[community[static_cast<std::size_t>(v)]] += w;
            }
            community_total[old_comm] -= lg.strength[u];
            const double base = link.count(old_comm) ? link.at(old_comm) : 0.0;
            const double base_gain =
                base - resolution * community_total[old_comm] * lg.strength[u] / two_m;
            int best_comm = old_comm;
            double best_gain = base_gain;
            for (const auto& [c, w] : link) {
                if (c == old_comm) continue;
                const double gain =
                    w - resolution * community_total[c] * lg.strength[u] / two_m;
                if (gain > best_gain + kGainEps) {
                    best_gain = gain;
                    best_comm = c;
                }
            }
            community_total[best_comm] += lg.strength[u];
            if (best_comm != old_comm) {
                community[u] = best_comm;
                improved = true;
                any_move = true;
            }
        }
    }
    return any_move;
}

LevelGraph aggregate(const LevelGraph& lg, const std::vector<int>& community,
                     std::vector<int>& dense_id) {
    // dense renumbering of the surviving communities
    dense_id.assign(lg.size(), -1);
    int next = 0;
    std::vector<int> seen;
    for (std::size_t u = 0; u < lg.size(); ++u) {
        if (dense_id[community[u]] == -1) dense_id[community[u]] = next++;
    }
    (void)seen;
    LevelGraph out;
    out.adj.resize(static_cast<std::size_t>(next));
    out.self_weight.assign(static_cast<std::size_t>(next), 0.0);
    out.strength.assign(static_cast<std::size_t>(next), 0.0);
    out.total_weight = lg.total_weight;
    for (std::size_t u = 0; u < lg.size(); ++u) {
        const int cu = dense_id[community[u]];
        out.self_weight[cu] += lg.self_weight[u];
        for (const auto& [v, w] : lg.adj[u]) {
            const int cv = dense_id[community[static_cast<std::size_t>(v)]];
            if (cu == cv) {
                if (static_cast<std::size_t>(v) > u) out.self_weight[cu] += w;
            } else {
                out.adj[cu][cv] += w;
            }
        }
    }
    for (std::size_t c = 0; c < out.size(); ++c) {
        double s = 2.0 * out.self_weight[c];
        for (const auto& [v, w] : out.adj[c]) s += w;
        out.strength[c] = s;
    }
    return out;
}

}  // namespace

double modularity(const AttributedGraph& g,
                  const std::map<std::string, int>& assignment,
                  double resolution) {
    const AttributedGraph und = as_undirected(g);
    if (und.edge_count() == 0) {
        throw UndefinedValueError("modularity undefined on an edgeless graph");
    }
    std::vector<int> community(und.node_count());
    for (NodeId id = 0; id < und.node_count(); ++id) {
        const auto it = assignment.find(und.key_of(id));
        if (it == assignment.end()) {
            throw DataError("modularity: node \"" + und.key_of(id) +
                            "\" has no community");
        }
        community[id] = it->second;
    }
    return level_modularity(level_from(und), community, resolution);
}

Partition louvain(const AttributedGraph& g, double resolution,
                  std::uint64_t seed) {
    const AttributedGraph raw = as_undirected(g);
    if (raw.edge_count() == 0) {
        throw DataError("louvain requires at least one edge");
    }

    // Rebuild over key-sorted node ids so the seeded visiting order (and with
    // it the whole run) does not depend on input insertion order.
    AttributedGraph und(/*directed=*/false);
    {
        std::vector<NodeId> order(raw.node_count());
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(), [&](NodeId a, NodeId b) {
            return raw.key_of(a) < raw.key_of(b);
        });
        for (const NodeId id : order) und.add_node(raw.key_of(id));
        for (const auto& e : raw.edges()) {
            und.add_edge(und.require(raw.key_of(e.source)),
                         und.require(raw.key_of(e.target)), e.weight);
        }
    }

    Partition partition;
    LevelGraph level = level_from(und);
    // node -> community at the original level, refined across passes
    std::vector<int> node_comm(und.node_count());
    std::iota(node_comm.begin(), node_comm.end(), 0);

    SplitMix64 rng(derive_seed(seed, "louvain"));
    for (int pass = 0;; ++pass) {
        std::vector<int> community(level.size());
        std::iota(community.begin(), community.end(), 0);
        const bool moved = local_moves(level, community, resolution, rng);
        std::vector<int> dense_id;
        level = aggregate(level, community, dense_id);
        for (auto& c : node_comm) c = dense_id[community[static_cast<std::size_t>(c)]];
        partition.pass_modularity.push_back(
            level_modularity(level_from(und), node_comm, resolution));
        if (!moved || level.size() <= 1) break;
    }

    // canonical dense ids: order of first appearance over key-sorted nodes
    std::vector<std::string> keys;
    keys.reserve(und.node_count());
    for (NodeId id = 0; id < und.node_count(); ++id) keys.push_back(und.key_of(id));
    std::vector<NodeId> by_key(und.node_count());
    std::iota(by_key.begin(), by_key.end(), 0);
    std::sort(by_key.begin(), by_key.end(),
              [&](NodeId a, NodeId b) { return keys[a] < keys[b]; });
    std::map<int, int> renumber;
    for (const NodeId id : by_key) {
        const int c = node_comm[id];
        if (!renumber.count(c)) {
            const int next = static_cast<int>(renumber.size());
            renumber.emplace(c, next);
        }
        partition.assignment.emplace(keys[id], renumber.at(c));
    }
    partition.modularity = modularity(g, partition.assignment, resolution);
    return partition;
}

AttributedGraph top_communities(const AttributedGraph& g,
                                const Partition& partition, std::size_t k) {
    std::map<int, std::size_t> sizes;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const auto it = partition.assignment.find(g.key_of(id));
        if (it == partition.assignment.end()) {
            throw DataError("top_communities: node \"" + g.key_of(id) +
                            "\" has no community");
        }
        ++sizes[it->second];
    }
    std::vector<std::pair<int, std::size_t>> ordered(sizes.begin(), sizes.end());
    std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (ordered.size() > k) ordered.resize(k);
    std::vector<bool> keep_comm;
    int max_id = -1;
    for (const auto& [c, s] : sizes) max_id = std::max(max_id, c);
    keep_comm.assign(static_cast<std::size_t>(max_id + 1), false);
    for (const auto& [c, s] : ordered) keep_comm[static_cast<std::size_t>(c)] = true;

    std::vector<NodeId> nodes;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        if (keep_comm[static_cast<std::size_t>(
                partition.assignment.at(g.key_of(id)))]) {
            nodes.push_back(id);
        }
    }
    return induced_subgraph(g, nodes);
}

std::vector<CommunitySummary> summarize_communities(
    const AttributedGraph& g, const Partition& partition,
    const std::vector<std::string>& attributes) {
    std::map<int, CommunitySummary> by_id;
    std::map<int, std::map<std::string, std::map<std::string, std::size_t>>> tallies;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const auto it = partition.assignment.find(g.key_of(id));
        if (it == partition.assignment.end()) {
            throw DataError("summarize_communities: node \"" + g.key_of(id) +
                            "\" has no community");
        }
        CommunitySummary& summary = by_id[it->second];
        summary.id = it->second;
        ++summary.size;
        for (const auto& attr : attributes) {
            const auto& labels = g.attributes(id).labels;
            const auto found = labels.find(attr);
            if (found != labels.end()) {
                ++tallies[it->second][attr][found->second];
            }
        }
    }
    std::vector<CommunitySummary> result;
    result.reserve(by_id.size());
    for (auto& [id, summary] : by_id) {
        for (const auto& [attr, counts] : tallies[id]) {
            std::string modal;
            std::size_t best = 0;
            for (const auto& [value, count] : counts) {
                if (count > best) {  // map order makes ties lexicographic
                    best = count;
                    modal = value;
                }
            }
            summary.modal[attr] = {modal, static_cast<double>(best) /
                                              static_cast<double>(summary.size)};
        }
        result.push_back(std::move(summary));
    }
    std::sort(result.begin(), result.end(),
              [](const CommunitySummary& a, const CommunitySummary& b) {
                  if (a.size != b.size) return a.size > b.size;
                  return a.id < b.id;
              });
    return result;
}

}  // namespace acqgraph
