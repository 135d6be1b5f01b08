#pragma once

#include <map>
#include <optional>
#include <string>

#include "acqgraph/graph.hpp"

namespace acqgraph {

// GraphML with node attributes typed string (labels) / long (numbers) and a
// long edge weight. Nodes are emitted in key order, edges in canonical key
// order, so the output is stable under input permutations. from_graphml
// restores everything to_graphml wrote (lossless round trip).
std::string to_graphml(const AttributedGraph& g);
AttributedGraph from_graphml(const std::string& xml);

// DOT with weights as a `weight` attribute. When a community map is given,
// nodes are filled from a 12-color palette cycled by community id.
std::string to_dot(const AttributedGraph& g,
                   const std::map<std::string, int>* community = nullptr);

}  // namespace acqgraph
