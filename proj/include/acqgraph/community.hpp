#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "acqgraph/graph.hpp"

namespace acqgraph {

struct Partition {
    std::map<std::string, int> assignment;  // node key -> community id, dense from 0
    double modularity = 0.0;
    // Modularity on the original graph after each aggregation pass;
    // non-decreasing by construction of the local moves.
    std::vector<double> pass_modularity;
};

// Newman modularity of a complete assignment on the weighted undirected view
// (directed inputs are symmetrized). Throws UndefinedValueError on an
// edgeless graph, DataError when a node has no community.
double modularity(const AttributedGraph& g,
                  const std::map<std::string, int>& assignment,
                  double resolution = 1.0);

// Two-phase local-move + aggregation loop; node visiting order is shuffled
// per sweep by the seeded RNG, so results are deterministic for a fixed
// seed. Requires at least one edge.
Partition louvain(const AttributedGraph& g, double resolution = 1.0,
                  std::uint64_t seed = 0);

// Induced subgraph on the union of the k largest communities (size ties go
// to the smaller community id). k past the community count selects all.
AttributedGraph top_communities(const AttributedGraph& g,
                                const Partition& partition, std::size_t k);

struct CommunitySummary {
    int id = 0;
    std::size_t size = 0;
    // attribute -> (modal value, fraction of members holding it)
    std::map<std::string, std::pair<std::string, double>> modal;
};

// Per-community size and modal attribute values, largest community first.
// Attributes absent from every member are omitted from that community.
std::vector<CommunitySummary> summarize_communities(
    const AttributedGraph& g, const Partition& partition,
    const std::vector<std::string>& attributes);

}  // namespace acqgraph
