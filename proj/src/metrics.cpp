#include "acqgraph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <queue>

#include "acqgraph/builders.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/parallel.hpp"

namespace acqgraph {

nlohmann::json to_json(const StructureRecord& record) {
    nlohmann::json j;
    j["n_nodes"] = record.n_nodes;
    j["n_edges"] = record.n_edges;
    auto set = [&j](const char* key, const std::optional<double>& value) {
        if (value) {
            j[key] = *value;
        } else {
            j[key] = nullptr;
        }
    };
    set("density", record.density);
    set("transitivity", record.transitivity);
    set("avg_clustering", record.avg_clustering);
    set("avg_shortest_path", record.avg_shortest_path);
    j["largest_wcc_size"] = record.largest_wcc_size;
    j["n_wcc"] = record.n_wcc;
    if (record.largest_scc_size) {
        j["largest_scc_size"] = *record.largest_scc_size;
    } else {
        j["largest_scc_size"] = nullptr;
    }
    return j;
}

StructureRecord structure_record_from_json(const nlohmann::json& j) {
    StructureRecord r;
    r.n_nodes = j.at("n_nodes").get<std::size_t>();
    r.n_edges = j.at("n_edges").get<std::size_t>();
    auto get = [&j](const char* key) -> std::optional<double> {
        if (j.at(key).is_null()) return std::nullopt;
        return j.at(key).get<double>();
    };
    r.density = get("density");
    r.transitivity = get("transitivity");
    r.avg_clustering = get("avg_clustering");
    r.avg_shortest_path = get("avg_shortest_path");
    r.largest_wcc_size = j.at("largest_wcc_size").get<std::size_t>();
    r.n_wcc = j.at("n_wcc").get<std::size_t>();
    if (!j.at("largest_scc_size").is_null()) {
        r.largest_scc_size = j.at("largest_scc_size").get<std::size_t>();
    }
    return r;
}

double density(const AttributedGraph& g) {
    const std::size_t n = g.node_count();
    if (n < 2) {
        throw UndefinedValueError("density undefined for fewer than 2 nodes");
    }
    const double m =
        static_cast<double>(g.edge_count() - g.self_loop_count());
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1);
    return g.directed() ? m / pairs : 2.0 * m / pairs;
}

namespace {

// Plain neighbor lists of the undirected simple view (no loops, no weights).
std::vector<std::vector<NodeId>> simple_adjacency(const AttributedGraph& g) {
    std::vector<std::vector<NodeId>> adj(g.node_count());
    if (g.directed()) {
        for (const auto& e : g.edges()) {
            if (e.source == e.target) continue;
            adj[e.source].push_back(e.target);
            adj[e.target].push_back(e.source);
        }
        for (auto& list : adj) {
            std::sort(list.begin(), list.end());
            list.erase(std::unique(list.begin(), list.end()), list.end());
        }
    } else {
        for (NodeId u = 0; u < g.node_count(); ++u) {
            for (const auto& [v, w] : g.out_neighbors(u)) {
                if (v != u) adj[u].push_back(v);
            }
        }
    }
    return adj;
}

bool adjacent(const std::vector<std::vector<NodeId>>& adj, NodeId a, NodeId b) {
    return std::binary_search(adj[a].begin(), adj[a].end(), b);
}

}  // namespace

double transitivity(const AttributedGraph& g) {
    const auto adj = simple_adjacency(g);
    std::uint64_t triples = 0;
    std::uint64_t closed = 0;  // 3 * triangle count
    for (NodeId u = 0; u < adj.size(); ++u) {
        const std::uint64_t d = adj[u].size();
        triples += d * (d - 1) / 2;
    }
    for (NodeId u = 0; u < adj.size(); ++u) {
        for (const NodeId v : adj[u]) {
            if (v <= u) continue;
            // common neighbors of edge (u, v); each triangle is seen from
            // each of its three edges exactly once
            auto it = adj[u].begin();
            auto jt = adj[v].begin();
            while (it != adj[u].end() && jt != adj[v].end()) {
                if (*it < *jt) {
                    ++it;
                } else if (*jt < *it) {
                    ++jt;
                } else {
                    ++closed;
                    ++it;
                    ++jt;
                }
            }
        }
    }
    if (triples == 0) return 0.0;
    return static_cast<double>(closed) / static_cast<double>(triples);
}

double avg_clustering(const AttributedGraph& g) {
    if (g.node_count() == 0) {
        throw UndefinedValueError("average clustering undefined on empty graph");
    }
    const auto adj = simple_adjacency(g);
    double sum = 0.0;
    for (NodeId u = 0; u < adj.size(); ++u) {
        const std::size_t d = adj[u].size();
        if (d < 2) continue;
        std::uint64_t links = 0;
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                if (adjacent(adj, adj[u][i], adj[u][j])) ++links;
            }
        }
        sum += 2.0 * static_cast<double>(links) /
               (static_cast<double>(d) * static_cast<double>(d - 1));
    }
    return sum / static_cast<double>(g.node_count());
}

ComponentPartition weak_components(const AttributedGraph& g) {
    const std::size_t n = g.node_count();
    ComponentPartition part;
    part.component_of.assign(n, -1);
    const auto adj = simple_adjacency(g);
    for (NodeId start = 0; start < n; ++start) {
        if (part.component_of[start] != -1) continue;
        const int comp = static_cast<int>(part.sizes.size());
        std::size_t size = 0;
        std::queue<NodeId> queue;
        queue.push(start);
        part.component_of[start] = comp;
        while (!queue.empty()) {
            const NodeId u = queue.front();
            queue.pop();
            ++size;
            for (const NodeId v : adj[u]) {
                if (part.component_of[v] == -1) {
                    part.component_of[v] = comp;
                    queue.push(v);
                }
            }
        }
        part.sizes.push_back(size);
    }
    return part;
}

ComponentPartition strong_components(const AttributedGraph& g) {
    if (!g.directed()) return weak_components(g);
    const std::size_t n = g.node_count();
    ComponentPartition part;
    part.component_of.assign(n, -1);

    // Iterative Tarjan.
    std::vector<int> index(n, -1), lowlink(n, 0);
    std::vector<bool> on_stack(n, false);
    std::vector<NodeId> stack;
    int next_index = 0;

    struct Frame {
        NodeId node;
        std::map<NodeId, Weight>::const_iterator it;
    };
    std::vector<Frame> frames;

    for (NodeId root = 0; root < n; ++root) {
        if (index[root] != -1) continue;
        frames.push_back({root, g.out_neighbors(root).begin()});
        index[root] = lowlink[root] = next_index++;
        stack.push_back(root);
        on_stack[root] = true;
        while (!frames.empty()) {
            Frame& frame = frames.back();
            const NodeId u = frame.node;
            if (frame.it != g.out_neighbors(u).end()) {
                const NodeId v = frame.it->first;
                ++frame.it;
                if (index[v] == -1) {
                    index[v] = lowlink[v] = next_index++;
                    stack.push_back(v);
                    on_stack[v] = true;
                    frames.push_back({v, g.out_neighbors(v).begin()});
                } else if (on_stack[v]) {
                    lowlink[u] = std::min(lowlink[u], index[v]);
                }
            } else {
                if (lowlink[u] == index[u]) {
                    const int comp = static_cast<int>(part.sizes.size());
                    std::size_t size = 0;
                    NodeId w;
                    do {
                        w = stack.back();
                        stack.pop_back();
                        on_stack[w] = false;
                        part.component_of[w] = comp;
                        ++size;
                    } while (w != u);
                    part.sizes.push_back(size);
                }
                frames.pop_back();
                if (!frames.empty()) {
                    const NodeId parent = frames.back().node;
                    lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
                }
            }
        }
    }
    return part;
}

std::size_t ComponentPartition::largest() const {
    std::size_t best = 0;
    for (const std::size_t s : sizes) best = std::max(best, s);
    return best;
}

namespace {

// Largest weak component; size ties go to the component holding the
// lexicographically smallest node key, so the choice survives relabeling.
std::vector<NodeId> largest_weak_component_nodes(const AttributedGraph& g,
                                                 const ComponentPartition& part) {
    if (part.sizes.empty()) return {};
    int best = -1;
    std::string best_key;
    std::vector<std::string> min_key(part.sizes.size());
    for (NodeId id = 0; id < g.node_count(); ++id) {
        std::string& slot = min_key[part.component_of[id]];
        if (slot.empty() || g.key_of(id) < slot) slot = g.key_of(id);
    }
    for (std::size_t c = 0; c < part.sizes.size(); ++c) {
        if (best == -1 || part.sizes[c] > part.sizes[best] ||
            (part.sizes[c] == part.sizes[best] && min_key[c] < best_key)) {
            best = static_cast<int>(c);
            best_key = min_key[c];
        }
    }
    std::vector<NodeId> nodes;
    nodes.reserve(part.sizes[best]);
    for (NodeId id = 0; id < g.node_count(); ++id) {
        if (part.component_of[id] == best) nodes.push_back(id);
    }
    return nodes;
}

}  // namespace

double avg_shortest_path(const AttributedGraph& g) {
    const auto part = weak_components(g);
    const auto nodes = largest_weak_component_nodes(g, part);
    if (nodes.size() < 2) {
        throw UndefinedValueError(
            "average shortest path undefined: largest component has fewer "
            "than 2 nodes");
    }
    const AttributedGraph comp = induced_subgraph(g, nodes);
    const auto adj = simple_adjacency(comp);
    const std::size_t n = adj.size();

    // Distance sums are integers, so the reduction is exact and order-free.
    std::uint64_t total = 0;
    for_blocks_ordered(
        n, 64,
        [&](std::size_t lo, std::size_t hi) {
            std::uint64_t partial = 0;
            std::vector<int> dist(n);
            for (std::size_t s = lo; s < hi; ++s) {
                std::fill(dist.begin(), dist.end(), -1);
                dist[s] = 0;
                std::queue<NodeId> queue;
                queue.push(static_cast<NodeId>(s));
                while (!queue.empty()) {
                    const NodeId u = queue.front();
                    queue.pop();
                    for (const NodeId v : adj[u]) {
                        if (dist[v] == -1) {
                            dist[v] = dist[u] + 1;
                            queue.push(v);
                        }
                    }
                }
                for (std::size_t t = 0; t < n; ++t) {
                    if (t != s) partial += static_cast<std::uint64_t>(dist[t]);
                }
            }
            return partial;
        },
        [&](std::uint64_t partial) { total += partial; });

    return static_cast<double>(total) /
           (static_cast<double>(n) * static_cast<double>(n - 1));
}

StructureRecord structure_record(const AttributedGraph& g) {
    StructureRecord record;
    record.n_nodes = g.node_count();
    record.n_edges = g.edge_count();
    auto compute = [](auto&& fn) -> std::optional<double> {
        try {
            return fn();
        } catch (const UndefinedValueError&) {
            return std::nullopt;
        }
    };
    record.density = compute([&] { return density(g); });
    record.transitivity = compute([&] { return transitivity(g); });
    record.avg_clustering = compute([&] { return avg_clustering(g); });
    record.avg_shortest_path = compute([&] { return avg_shortest_path(g); });
    const auto weak = weak_components(g);
    record.largest_wcc_size = weak.largest();
    record.n_wcc = weak.count();
    if (g.directed()) {
        record.largest_scc_size = strong_components(g).largest();
    }
    return record;
}

namespace {

std::vector<const std::string*> label_of_nodes(const AttributedGraph& g,
                                               const std::string& attribute) {
    std::vector<const std::string*> labels(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const auto& attrs = g.attributes(id).labels;
        const auto it = attrs.find(attribute);
        if (it == attrs.end()) {
            throw DataError("node \"" + g.key_of(id) +
                            "\" missing attribute \"" + attribute + "\"");
        }
        labels[id] = &it->second;
    }
    return labels;
}

}  // namespace

MixingMatrix mixing_matrix(const AttributedGraph& g,
                           const std::string& attribute) {
    const auto labels = label_of_nodes(g, attribute);
    MixingMatrix mix;
    for (const auto* label : labels) mix.labels.push_back(*label);
    std::sort(mix.labels.begin(), mix.labels.end());
    mix.labels.erase(std::unique(mix.labels.begin(), mix.labels.end()),
                     mix.labels.end());
    std::map<std::string, std::size_t> label_index;
    for (std::size_t i = 0; i < mix.labels.size(); ++i) {
        label_index.emplace(mix.labels[i], i);
    }
    const std::size_t k = mix.labels.size();
    mix.e.assign(k, std::vector<double>(k, 0.0));
    mix.a.assign(k, 0.0);
    mix.b.assign(k, 0.0);

    double total = 0.0;
    for (const auto& edge : g.edges()) {
        if (edge.source == edge.target) continue;
        const std::size_t lu = label_index.at(*labels[edge.source]);
        const std::size_t lv = label_index.at(*labels[edge.target]);
        const double w = static_cast<double>(edge.weight);
        if (g.directed()) {
            mix.e[lu][lv] += w;
        } else {
            mix.e[lu][lv] += w / 2.0;
            mix.e[lv][lu] += w / 2.0;
        }
        total += w;
    }
    if (total == 0.0) {
        throw UndefinedValueError("mixing matrix undefined without edges");
    }
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) {
            mix.e[i][j] /= total;
            mix.a[i] += mix.e[i][j];
            mix.b[j] += mix.e[i][j];
        }
    }
    return mix;
}

double assortativity_categorical(const AttributedGraph& g,
                                 const std::string& attribute) {
    const MixingMatrix mix = mixing_matrix(g, attribute);
    double trace = 0.0, agreement = 0.0;
    for (std::size_t i = 0; i < mix.labels.size(); ++i) {
        trace += mix.e[i][i];
        agreement += mix.a[i] * mix.b[i];
    }
    if (mix.labels.size() == 1) {
        throw UndefinedValueError(
            "categorical assortativity undefined: all nodes share one label");
    }
    const double denom = 1.0 - agreement;
    if (std::abs(denom) < 1e-15) {
        throw UndefinedValueError(
            "categorical assortativity undefined: degenerate mixing matrix");
    }
    return (trace - agreement) / denom;
}

namespace {

double numeric_assortativity_over_edges(const AttributedGraph& g,
                                        const std::vector<double>& value) {
    double weight_total = 0.0;
    double sum_x = 0.0, sum_y = 0.0;
    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;

    auto each_pair = [&](auto&& fn) {
        for (const auto& edge : g.edges()) {
            if (edge.source == edge.target) continue;
            const double w = static_cast<double>(edge.weight);
            fn(value[edge.source], value[edge.target], w);
            if (!g.directed()) fn(value[edge.target], value[edge.source], w);
        }
    };

    each_pair([&](double x, double y, double w) {
        weight_total += w;
        sum_x += w * x;
        sum_y += w * y;
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
        min_y = std::min(min_y, y);
        max_y = std::max(max_y, y);
    });
    if (weight_total == 0.0) {
        throw UndefinedValueError("numeric assortativity undefined without edges");
    }
    if (min_x == max_x || min_y == max_y) {
        throw UndefinedValueError(
            "numeric assortativity undefined: zero variance on a margin");
    }
    const double mean_x = sum_x / weight_total;
    const double mean_y = sum_y / weight_total;
    double cov = 0.0, var_x = 0.0, var_y = 0.0;
    each_pair([&](double x, double y, double w) {
        cov += w * (x - mean_x) * (y - mean_y);
        var_x += w * (x - mean_x) * (x - mean_x);
        var_y += w * (y - mean_y) * (y - mean_y);
    });
    return cov / std::sqrt(var_x * var_y);
}

}  // namespace

double assortativity_numeric(const AttributedGraph& g,
                             const std::string& attribute) {
    std::vector<double> value(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) {
        const auto& numbers = g.attributes(id).numbers;
        const auto it = numbers.find(attribute);
        if (it == numbers.end()) {
            throw DataError("node \"" + g.key_of(id) +
                            "\" missing numeric attribute \"" + attribute +
                            "\"");
        }
        value[id] = it->second;
    }
    return numeric_assortativity_over_edges(g, value);
}

std::string to_string(DegreeFlavor flavor) {
    switch (flavor) {
        case DegreeFlavor::In: return "in";
        case DegreeFlavor::Out: return "out";
        case DegreeFlavor::Total: return "total";
    }
    return "total";
}

double assortativity_degree(const AttributedGraph& g, DegreeFlavor flavor) {
    std::vector<double> value(g.node_count());
    for (NodeId id = 0; id < g.node_count(); ++id) {
        switch (flavor) {
            case DegreeFlavor::In: value[id] = static_cast<double>(g.in_degree(id)); break;
            case DegreeFlavor::Out: value[id] = static_cast<double>(g.out_degree(id)); break;
            case DegreeFlavor::Total: value[id] = static_cast<double>(g.total_degree(id)); break;
        }
    }
    return numeric_assortativity_over_edges(g, value);
}

}  // namespace acqgraph
