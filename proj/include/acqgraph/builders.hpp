#pragma once

#include <cstddef>
#include <vector>

#include "acqgraph/graph.hpp"
#include "acqgraph/records.hpp"

namespace acqgraph {

// Directed company graph: one node per org appearing in at least one event,
// edge acquirer -> acquiree, weight = number of such events. Raises DataError
// when an event references an org that is not in the record set.
AttributedGraph build_acquisition(const std::vector<OrgRecord>& orgs,
                                  const std::vector<AcquisitionEvent>& events);

// Undirected projection on acquirees; weight(x,y) = number of shared
// acquirers. Node attributes are attached when org records are supplied.
AttributedGraph build_common_acquirer(const std::vector<AcquisitionEvent>& events);
AttributedGraph build_common_acquirer(const std::vector<OrgRecord>& orgs,
                                      const std::vector<AcquisitionEvent>& events);

// Dual projection on acquirers; weight = number of shared acquirees.
AttributedGraph build_common_acquiree(const std::vector<AcquisitionEvent>& events);
AttributedGraph build_common_acquiree(const std::vector<OrgRecord>& orgs,
                                      const std::vector<AcquisitionEvent>& events);

// Directed geography graphs, self-loops allowed (domestic deals). City nodes
// are keyed by the full (city, region, country) triple so homonymous cities
// stay distinct; edge weight = number of acquisitions between the places.
AttributedGraph build_cross_city(const std::vector<OrgRecord>& orgs,
                                 const std::vector<AcquisitionEvent>& events);
AttributedGraph build_cross_border(const std::vector<OrgRecord>& orgs,
                                   const std::vector<AcquisitionEvent>& events);

std::string city_node_key(const OrgRecord& org);

// Collapses antiparallel edges (weights summed) and drops self-loops.
// Input must be directed.
AttributedGraph undirected_view(const AttributedGraph& g);

// g when already undirected, otherwise undirected_view(g).
AttributedGraph as_undirected(const AttributedGraph& g);

// Induced subgraph on the k nodes of largest total degree (self-loops not
// counted), ties broken lexicographically by node key.
AttributedGraph subgraph_top_degree(const AttributedGraph& g, std::size_t k);

AttributedGraph build_network(NetworkKind kind,
                              const std::vector<OrgRecord>& orgs,
                              const std::vector<AcquisitionEvent>& events);

}  // namespace acqgraph
