#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "acqgraph/graph.hpp"
#include "acqgraph/metrics.hpp"

namespace acqgraph {

struct BaselineSpec {
    std::size_t n = 0;
    double p = 0.0;
    bool directed = false;
    std::uint64_t seed = 0;
};

// n, p and directedness copied from the graph (p = density). Seed left 0.
BaselineSpec matched_spec(const AttributedGraph& g);

// G(n, p): every (ordered, for directed) node pair independently with
// probability p; no self-loops; attribute-free nodes; identical edge set for
// identical seeds.
AttributedGraph generate_er(const BaselineSpec& spec);

// Field-wise mean over samples; a field is null when undefined in every
// sample. Component sizes and counts average to fractional values.
struct StructureMean {
    std::optional<double> density;
    std::optional<double> transitivity;
    std::optional<double> avg_clustering;
    std::optional<double> avg_shortest_path;
    std::optional<double> largest_wcc_size;
    std::optional<double> n_wcc;
    std::optional<double> largest_scc_size;
};

struct ComparisonReport {
    StructureRecord real;
    StructureMean baseline_mean;
    std::vector<StructureRecord> samples;
    BaselineSpec spec;
    int n_samples = 0;
    std::uint64_t seed = 0;
};

// Real-vs-random structural comparison: the graph's StructureRecord next to
// the mean over n_samples seeded ER draws matched on (n, p, directedness).
ComparisonReport compare(const AttributedGraph& g, int n_samples,
                         std::uint64_t seed);

nlohmann::json to_json(const ComparisonReport& report);

}  // namespace acqgraph
