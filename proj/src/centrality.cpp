#include "acqgraph/centrality.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "acqgraph/errors.hpp"
#include "acqgraph/parallel.hpp"

namespace acqgraph {

std::string to_string(CentralityMetric metric) {
    switch (metric) {
        case CentralityMetric::Degree: return "degree";
        case CentralityMetric::WeightedDegree: return "weighted_degree";
        case CentralityMetric::Betweenness: return "betweenness";
        case CentralityMetric::Closeness: return "closeness";
        case CentralityMetric::Eigenvector: return "eigenvector";
        case CentralityMetric::PageRank: return "pagerank";
        case CentralityMetric::Authority: return "authority";
        case CentralityMetric::Hubs: return "hubs";
    }
    return "degree";
}

std::optional<CentralityMetric> centrality_metric_from_string(
    std::string_view name) {
    if (name == "degree") return CentralityMetric::Degree;
    if (name == "weighted_degree") return CentralityMetric::WeightedDegree;
    if (name == "betweenness") return CentralityMetric::Betweenness;
    if (name == "closeness") return CentralityMetric::Closeness;
    if (name == "eigenvector") return CentralityMetric::Eigenvector;
    if (name == "pagerank") return CentralityMetric::PageRank;
    if (name == "authority") return CentralityMetric::Authority;
    return std::nullopt;
}

namespace {

CentralityVector make_vector(const AttributedGraph& g, CentralityMetric metric,
                             const std::vector<double>& values,
                             CentralityParams params) {
    CentralityVector vec;
    vec.metric = metric;
    vec.params = params;
    for (NodeId id = 0; id < g.node_count(); ++id) {
        vec.values.emplace(g.key_of(id), values[id]);
    }
    return vec;
}

struct Csr {
    std::vector<std::size_t> offsets;
    std::vector<NodeId> targets;
    std::vector<double> weights;

    std::size_t degree(NodeId u) const { return offsets[u + 1] - offsets[u]; }
};

// out: edges as stored; in: reversed. Loop-free input expected.
Csr to_csr(const AttributedGraph& g, bool reversed) {
    const std::size_t n = g.node_count();
    Csr csr;
    csr.offsets.assign(n + 1, 0);
    auto neighbors = [&](NodeId u) -> const std::map<NodeId, Weight>& {
        return reversed ? g.in_neighbors(u) : g.out_neighbors(u);
    };
    for (NodeId u = 0; u < n; ++u) csr.offsets[u + 1] = neighbors(u).size();
    for (std::size_t i = 1; i <= n; ++i) csr.offsets[i] += csr.offsets[i - 1];
    csr.targets.resize(csr.offsets[n]);
    csr.weights.resize(csr.offsets[n]);
    std::size_t pos = 0;
    for (NodeId u = 0; u < n; ++u) {
        for (const auto& [v, w] : neighbors(u)) {
            csr.targets[pos] = v;
            csr.weights[pos] = static_cast<double>(w);
            ++pos;
        }
    }
    return csr;
}

}  // namespace

CentralityVector degree_centrality(const AttributedGraph& g,
                                   DegreeFlavor flavor, bool normalized) {
    const std::size_t n = g.node_count();
    std::vector<double> values(n, 0.0);
    const double scale = normalized && n > 1 ? 1.0 / static_cast<double>(n - 1) : 1.0;
    for (NodeId id = 0; id < n; ++id) {
        std::size_t d = 0;
        switch (flavor) {
            case DegreeFlavor::In: d = g.in_degree(id); break;
            case DegreeFlavor::Out: d = g.out_degree(id); break;
            case DegreeFlavor::Total: d = g.total_degree(id); break;
        }
        values[id] = static_cast<double>(d) * scale;
    }
    CentralityParams params;
    params.normalized = normalized;
    params.flavor = flavor;
    return make_vector(g, CentralityMetric::Degree, values, params);
}

CentralityVector weighted_degree(const AttributedGraph& g, DegreeFlavor flavor) {
    const std::size_t n = g.node_count();
    std::vector<double> values(n, 0.0);
    for (NodeId u = 0; u < n; ++u) {
        double in_sum = 0.0, out_sum = 0.0;
        for (const auto& [v, w] : g.out_neighbors(u)) {
            if (v != u) out_sum += static_cast<double>(w);
        }
        for (const auto& [v, w] : g.in_neighbors(u)) {
            if (v != u) in_sum += static_cast<double>(w);
        }
        if (!g.directed()) in_sum = out_sum;
        switch (flavor) {
            case DegreeFlavor::In: values[u] = in_sum; break;
            case DegreeFlavor::Out: values[u] = out_sum; break;
            case DegreeFlavor::Total:
                values[u] = g.directed() ? in_sum + out_sum : out_sum;
                break;
        }
    }
    CentralityParams params;
    params.normalized = false;
    params.flavor = flavor;
    return make_vector(g, CentralityMetric::WeightedDegree, values, params);
}

CentralityVector betweenness(const AttributedGraph& g, bool normalized) {
    const AttributedGraph simple = strip_self_loops(g);
    const std::size_t n = simple.node_count();
    const Csr csr = to_csr(simple, /*reversed=*/false);
    std::vector<double> score(n, 0.0);

    // Brandes dependency accumulation per source. Blocks merge in fixed
    // order, so floating-point sums do not depend on the worker count.
    for_blocks_ordered(
        n, 32,
        [&](std::size_t lo, std::size_t hi) {
            std::vector<double> partial(n, 0.0);
            std::vector<int> dist(n);
            std::vector<double> sigma(n), delta(n);
            std::vector<std::vector<NodeId>> preds(n);
            std::vector<NodeId> order;
            order.reserve(n);
            for (std::size_t s = lo; s < hi; ++s) {
                std::fill(dist.begin(), dist.end(), -1);
                std::fill(sigma.begin(), sigma.end(), 0.0);
                std::fill(delta.begin(), delta.end(), 0.0);
                for (auto& p : preds) p.clear();
                order.clear();
                dist[s] = 0;
                sigma[s] = 1.0;
                std::queue<NodeId> queue;
                queue.push(static_cast<NodeId>(s));
                while (!queue.empty()) {
                    const NodeId u = queue.front();
                    queue.pop();
                    order.push_back(u);
                    for (std::size_t i = csr.offsets[u]; i < csr.offsets[u + 1]; ++i) {
                        const NodeId v = csr.targets[i];
                        if (dist[v] == -1) {
                            dist[v] = dist[u] + 1;
                            queue.push(v);
                        }
                        if (dist[v] == dist[u] + 1) {
                            sigma[v] += sigma[u];
                            preds[v].push_back(u);
                        }
                    }
                }
                for (auto it = order.rbegin(); it != order.rend(); ++it) {
                    const NodeId w = *it;
                    for (const NodeId v : preds[w]) {
                        delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
                    }
                    if (w != s) partial[w] += delta[w];
                }
            }
            return partial;
        },
        [&](std::vector<double>&& partial) {
            for (std::size_t i = 0; i < n; ++i) score[i] += partial[i];
        });

    double scale = 1.0;
    if (normalized) {
        // Undirected accumulation counts each unordered pair twice, which is
        // exactly the factor between the two normalizations.
        scale = n > 2 ? 1.0 / (static_cast<double>(n - 1) * static_cast<double>(n - 2))
                      : 0.0;
    } else if (!simple.directed()) {
        scale = 0.5;
    }
    for (auto& v : score) v *= scale;

    CentralityParams params;
    params.normalized = normalized;
    return make_vector(g, CentralityMetric::Betweenness, score, params);
}

CentralityVector closeness(const AttributedGraph& g) {
    const AttributedGraph simple = strip_self_loops(g);
    const std::size_t n = simple.node_count();
    // BFS from u over reversed edges yields the incoming distances d(v, u).
    const Csr csr = to_csr(simple, /*reversed=*/simple.directed());
    std::vector<double> score(n, 0.0);

    for_blocks_ordered(
        n, 64,
        [&](std::size_t lo, std::size_t hi) {
            std::vector<std::pair<std::size_t, double>> partial;
            partial.reserve(hi - lo);
            std::vector<int> dist(n);
            for (std::size_t u = lo; u < hi; ++u) {
                std::fill(dist.begin(), dist.end(), -1);
                dist[u] = 0;
                std::queue<NodeId> queue;
                queue.push(static_cast<NodeId>(u));
                std::uint64_t sum = 0, reached = 0;
                while (!queue.empty()) {
                    const NodeId x = queue.front();
                    queue.pop();
                    ++reached;
                    sum += static_cast<std::uint64_t>(dist[x]);
                    for (std::size_t i = csr.offsets[x]; i < csr.offsets[x + 1]; ++i) {
                        const NodeId y = csr.targets[i];
                        if (dist[y] == -1) {
                            dist[y] = dist[x] + 1;
                            queue.push(y);
                        }
                    }
                }
                double value = 0.0;
                if (reached > 1 && n > 1) {
                    const double r = static_cast<double>(reached - 1);
                    value = r / static_cast<double>(sum) * r /
                            static_cast<double>(n - 1);
                }
                partial.emplace_back(u, value);
            }
            return partial;
        },
        [&](std::vector<std::pair<std::size_t, double>>&& partial) {
            for (const auto& [u, value] : partial) score[u] = value;
        });

    CentralityParams params;
    params.normalized = true;
    return make_vector(g, CentralityMetric::Closeness, score, params);
}

namespace {

double l2_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (const double x : v) s += x * x;
    return std::sqrt(s);
}

double l1_change(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return s;
}

bool directed_acyclic(const AttributedGraph& g) {
    if (!g.directed()) return false;
    if (g.self_loop_count() > 0) return false;
    const auto scc = strong_components(g);
    return scc.largest() <= 1;
}

}  // namespace

CentralityVector eigenvector(const AttributedGraph& g, double tolerance,
                             int max_iterations) {
    const AttributedGraph simple = strip_self_loops(g);
    const std::size_t n = simple.node_count();
    if (simple.edge_count() == 0) {
        throw UndefinedValueError("eigenvector centrality undefined: no edges");
    }
    if (directed_acyclic(simple)) {
        throw UndefinedValueError(
            "eigenvector centrality undefined: adjacency spectrum is "
            "degenerate (acyclic directed graph)");
    }
    // x_u accumulates from in-edges; the +x shift keeps periodic structures
    // (bipartite graphs, directed cycles) from oscillating without moving
    // the principal eigenvector.
    const Csr incoming = to_csr(simple, /*reversed=*/true);
    std::vector<double> x(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> next(n);
    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        for (std::size_t u = 0; u < n; ++u) {
            double acc = x[u];
            for (std::size_t i = incoming.offsets[u]; i < incoming.offsets[u + 1]; ++i) {
                acc += incoming.weights[i] * x[incoming.targets[i]];
            }
            next[u] = acc;
        }
        const double norm = l2_norm(next);
        if (norm == 0.0) {
            throw UndefinedValueError(
                "eigenvector centrality undefined: iterate collapsed to zero");
        }
        for (auto& v : next) v /= norm;
        const double change = l1_change(next, x);
        x.swap(next);
        if (change < tolerance) break;
    }
    if (iterations >= max_iterations) {
        throw ConvergenceError("eigenvector centrality did not converge after " +
                                   std::to_string(max_iterations) + " iterations",
                               max_iterations);
    }
    CentralityParams params;
    params.tolerance = tolerance;
    params.max_iterations = max_iterations;
    params.iterations_used = iterations + 1;
    return make_vector(g, CentralityMetric::Eigenvector, x, params);
}

CentralityVector pagerank(const AttributedGraph& g, double alpha,
                          double tolerance, int max_iterations) {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw DataError("pagerank alpha must lie in (0, 1)");
    }
    const AttributedGraph simple = strip_self_loops(g);
    const std::size_t n = simple.node_count();
    if (n == 0) throw UndefinedValueError("pagerank undefined on empty graph");

    const Csr outgoing = to_csr(simple, /*reversed=*/false);
    std::vector<double> out_weight(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t i = outgoing.offsets[u]; i < outgoing.offsets[u + 1]; ++i) {
            out_weight[u] += outgoing.weights[i];
        }
    }

    std::vector<double> x(n, 1.0 / static_cast<double>(n));
    std::vector<double> next(n);
    const double teleport = (1.0 - alpha) / static_cast<double>(n);
    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        double dangling = 0.0;
        for (std::size_t u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0) dangling += x[u];
        }
        std::fill(next.begin(), next.end(),
                  teleport + alpha * dangling / static_cast<double>(n));
        for (std::size_t u = 0; u < n; ++u) {
            if (out_weight[u] == 0.0) continue;
            const double share = alpha * x[u] / out_weight[u];
            for (std::size_t i = outgoing.offsets[u]; i < outgoing.offsets[u + 1]; ++i) {
                next[outgoing.targets[i]] += share * outgoing.weights[i];
            }
        }
        const double change = l1_change(next, x);
        x.swap(next);
        if (change < tolerance) break;
    }
    if (iterations >= max_iterations) {
        throw ConvergenceError("pagerank did not converge after " +
                                   std::to_string(max_iterations) + " iterations",
                               max_iterations);
    }
    double sum = 0.0;
    for (const double v : x) sum += v;
    for (auto& v : x) v /= sum;

    CentralityParams params;
    params.alpha = alpha;
    params.tolerance = tolerance;
    params.max_iterations = max_iterations;
    params.iterations_used = iterations + 1;
    return make_vector(g, CentralityMetric::PageRank, x, params);
}

HitsResult hits(const AttributedGraph& g, double tolerance, int max_iterations) {
    const AttributedGraph simple = strip_self_loops(g);
    const std::size_t n = simple.node_count();
    if (simple.edge_count() == 0) {
        throw UndefinedValueError("authority centrality undefined: no edges");
    }
    const Csr outgoing = to_csr(simple, /*reversed=*/false);
    const Csr incoming = to_csr(simple, /*reversed=*/simple.directed());

    std::vector<double> auth(n, 1.0 / std::sqrt(static_cast<double>(n)));
    std::vector<double> hub(n, 0.0), next_auth(n);
    int iterations = 0;
    for (; iterations < max_iterations; ++iterations) {
        // hub score from the authorities a node points at
        for (std::size_t u = 0; u < n; ++u) {
            double acc = 0.0;
            for (std::size_t i = outgoing.offsets[u]; i < outgoing.offsets[u + 1]; ++i) {
                acc += outgoing.weights[i] * auth[outgoing.targets[i]];
            }
            hub[u] = acc;
        }
        const double hub_norm = l2_norm(hub);
        if (hub_norm > 0.0) {
            for (auto& v : hub) v /= hub_norm;
        }
        // authority score from the hubs pointing at a node
        for (std::size_t u = 0; u < n; ++u) {
            double acc = 0.0;
            for (std::size_t i = incoming.offsets[u]; i < incoming.offsets[u + 1]; ++i) {
                acc += incoming.weights[i] * hub[incoming.targets[i]];
            }
            next_auth[u] = acc;
        }
        const double norm = l2_norm(next_auth);
        if (norm == 0.0) {
            throw UndefinedValueError(
                "authority centrality undefined: iterate collapsed to zero");
        }
        for (auto& v : next_auth) v /= norm;
        const double change = l1_change(next_auth, auth);
        auth.swap(next_auth);
        if (change < tolerance) break;
    }
    if (iterations >= max_iterations) {
        throw ConvergenceError("authority centrality did not converge after " +
                                   std::to_string(max_iterations) +
                                   " iterations",
                               max_iterations);
    }
    CentralityParams params;
    params.tolerance = tolerance;
    params.max_iterations = max_iterations;
    params.iterations_used = iterations + 1;
    HitsResult result;
    result.authority = make_vector(g, CentralityMetric::Authority, auth, params);
    result.hubs = make_vector(g, CentralityMetric::Hubs, hub, params);
    return result;
}

RankTable rank_table(const std::vector<CentralityVector>& vectors,
                     std::size_t k) {
    RankTable table;
    for (std::size_t i = 1; i < vectors.size(); ++i) {
        if (vectors[i].values.size() != vectors[0].values.size()) {
            throw DataError("rank_table: vectors cover different node sets");
        }
        auto a = vectors[0].values.begin();
        auto b = vectors[i].values.begin();
        for (; a != vectors[0].values.end(); ++a, ++b) {
            if (a->first != b->first) {
                throw DataError("rank_table: vectors cover different node sets");
            }
        }
    }
    for (const auto& vec : vectors) {
        std::vector<RankedEntry> entries;
        entries.reserve(vec.values.size());
        for (const auto& [key, value] : vec.values) {
            entries.push_back({key, value, 0});
        }
        std::stable_sort(entries.begin(), entries.end(),
                         [](const RankedEntry& a, const RankedEntry& b) {
                             if (a.value != b.value) return a.value > b.value;
                             return a.key < b.key;
                         });
        if (entries.size() > k) entries.resize(k);
        for (std::size_t i = 0; i < entries.size(); ++i) {
            entries[i].rank = static_cast<int>(i) + 1;
        }
        table.tables.emplace_back(vec.metric, std::move(entries));
    }
    return table;
}

}  // namespace acqgraph
