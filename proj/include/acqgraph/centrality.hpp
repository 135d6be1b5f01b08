#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acqgraph/graph.hpp"
#include "acqgraph/metrics.hpp"

namespace acqgraph {

enum class CentralityMetric {
    Degree,
    WeightedDegree,
    Betweenness,
    Closeness,
    Eigenvector,
    PageRank,
    Authority,
    Hubs,  // companion vector of Authority
};

std::string to_string(CentralityMetric metric);
std::optional<CentralityMetric> centrality_metric_from_string(
    std::string_view name);

struct CentralityParams {
    double alpha = 0.85;
    double tolerance = 1e-9;
    int max_iterations = 1000;
    bool normalized = true;
    DegreeFlavor flavor = DegreeFlavor::Total;
    int iterations_used = 0;
};

struct CentralityVector {
    CentralityMetric metric = CentralityMetric::Degree;
    std::map<std::string, double> values;  // node key -> score
    CentralityParams params;
};

// Self-loops are dropped inside every centrality computation.

// Unweighted edge count by flavor, divided by (n-1) when normalized.
CentralityVector degree_centrality(const AttributedGraph& g,
                                   DegreeFlavor flavor = DegreeFlavor::Total,
                                   bool normalized = true);

// Sum of incident edge weights by flavor.
CentralityVector weighted_degree(const AttributedGraph& g,
                                 DegreeFlavor flavor = DegreeFlavor::Total);

// Shortest-path betweenness over hop distances (weights are multiplicities,
// not lengths), endpoints excluded, normalized by (n-1)(n-2) for directed
// graphs and (n-1)(n-2)/2 for undirected ones.
CentralityVector betweenness(const AttributedGraph& g, bool normalized = true);

// (r-1)/sum_incoming_distances scaled by (r-1)/(n-1), where r counts the
// nodes that can reach u. Nodes reached by no one score 0.
CentralityVector closeness(const AttributedGraph& g);

// Principal-eigenvector centrality via shift-damped power iteration
// (x <- (A+I)x with in-edge orientation), weight-aware, unit Euclidean norm.
// Throws UndefinedValueError on an edgeless graph or an acyclic directed one
// (zero spectral radius), ConvergenceError past max_iterations.
CentralityVector eigenvector(const AttributedGraph& g, double tolerance = 1e-10,
                             int max_iterations = 1000);

// Weight-proportional random surfer with uniform teleport for dangling
// nodes; output sums to 1.
CentralityVector pagerank(const AttributedGraph& g, double alpha = 0.85,
                          double tolerance = 1e-12, int max_iterations = 200);

struct HitsResult {
    CentralityVector authority;
    CentralityVector hubs;
};

// Alternating hub/authority iteration; authority is the principal
// eigenvector of A^T A, unit norm.
HitsResult hits(const AttributedGraph& g, double tolerance = 1e-12,
                int max_iterations = 1000);

struct RankedEntry {
    std::string key;
    double value = 0.0;
    int rank = 0;
};

struct RankTable {
    std::vector<std::pair<CentralityMetric, std::vector<RankedEntry>>> tables;
};

// Top-k per metric, value-descending with lexicographic tie-break. All
// vectors must cover the same node set.
RankTable rank_table(const std::vector<CentralityVector>& vectors,
                     std::size_t k);

}  // namespace acqgraph
