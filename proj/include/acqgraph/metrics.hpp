#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acqgraph/graph.hpp"

namespace acqgraph {

// One row set of the structural comparison tables. Optional members are
// undefined-value results and serialize as null, never as 0.
struct StructureRecord {
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::optional<double> density;
    std::optional<double> transitivity;
    std::optional<double> avg_clustering;
    std::optional<double> avg_shortest_path;
    std::size_t largest_wcc_size = 0;
    std::size_t n_wcc = 0;
    std::optional<std::size_t> largest_scc_size;  // directed graphs only

    bool operator==(const StructureRecord&) const = default;
};

nlohmann::json to_json(const StructureRecord& record);
StructureRecord structure_record_from_json(const nlohmann::json& j);

// Distinct-edge density, self-loops excluded from both numerator and
// denominator. Throws UndefinedValueError when |V| < 2.
double density(const AttributedGraph& g);

// 3*triangles / connected triples on the undirected simple view; 0 when the
// graph has no connected triple.
double transitivity(const AttributedGraph& g);

// Mean unweighted local clustering coefficient over all nodes; nodes of
// degree < 2 contribute 0. Throws UndefinedValueError on an empty graph.
double avg_clustering(const AttributedGraph& g);

// Mean BFS distance over ordered pairs within the largest weakly connected
// component (undirected view). Throws UndefinedValueError when that
// component has fewer than two nodes.
double avg_shortest_path(const AttributedGraph& g);

struct ComponentPartition {
    std::vector<int> component_of;  // node id -> component index
    std::vector<std::size_t> sizes;

    std::size_t count() const { return sizes.size(); }
    std::size_t largest() const;
};

ComponentPartition weak_components(const AttributedGraph& g);
// Tarjan over directed edges; equals weak_components on undirected input.
ComponentPartition strong_components(const AttributedGraph& g);

StructureRecord structure_record(const AttributedGraph& g);

// Edge fractions by (source label, target label); undirected edges count in
// both orientations with half weight. a and b are the marginals.
struct MixingMatrix {
    std::vector<std::string> labels;
    std::vector<std::vector<double>> e;
    std::vector<double> a;
    std::vector<double> b;
};

MixingMatrix mixing_matrix(const AttributedGraph& g, const std::string& attribute);

// Newman's categorical assortativity (tr e - sum a_i b_i) / (1 - sum a_i b_i),
// edge multiplicity counted via weights, self-loops excluded. Throws
// DataError when a node lacks the attribute, UndefinedValueError when all
// nodes carry one label.
double assortativity_categorical(const AttributedGraph& g,
                                 const std::string& attribute);

// Weighted Pearson correlation of (source value, target value) over the edge
// list; undirected edges contribute both orientations. Throws
// UndefinedValueError on zero variance of either margin.
double assortativity_numeric(const AttributedGraph& g,
                             const std::string& attribute);

enum class DegreeFlavor { In, Out, Total };

std::string to_string(DegreeFlavor flavor);

// Numeric assortativity with the node degree as attribute.
double assortativity_degree(const AttributedGraph& g,
                            DegreeFlavor flavor = DegreeFlavor::Total);

}  // namespace acqgraph
