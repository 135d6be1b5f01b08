#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "acqgraph/baseline.hpp"
#include "acqgraph/centrality.hpp"
#include "acqgraph/community.hpp"
#include "acqgraph/ergm.hpp"
#include "acqgraph/graph.hpp"
#include "acqgraph/metrics.hpp"
#include "acqgraph/records.hpp"

namespace acqgraph {

// FNV-1a over the canonically sorted (source key, target key, weight)
// triples plus directedness; stable under input row permutations.
std::string graph_content_hash(const AttributedGraph& g);

struct AnalyzeOptions {
    bool with_baseline = false;
    bool with_centrality = false;
    bool with_assortativity = false;
    bool with_communities = false;
    bool with_ergm = false;
    int baseline_samples = 10;
    std::uint64_t seed = 0;
    std::size_t top_k = 10;
    double resolution = 1.0;
    double alpha = 0.85;
    double tolerance = 1e-9;
    int max_iterations = 1000;
    std::vector<ErgmTerm> ergm_terms;  // empty -> default term set
    std::optional<double> ergm_case_control_ratio;  // unset -> exact
};

struct CommunitiesSection {
    std::size_t n_communities = 0;
    double modularity = 0.0;
    std::vector<CommunitySummary> summaries;
};

// Every sub-record is computed from one graph instance; the hash ties them
// together so records from different builds cannot be mixed up.
struct AnalysisBundle {
    NetworkKind kind = NetworkKind::Acquisition;
    std::string graph_hash;
    StructureRecord structure;
    std::optional<ComparisonReport> baseline;
    std::optional<RankTable> centralities;
    // feature -> coefficient; nullopt = undefined on this graph
    std::optional<std::map<std::string, std::optional<double>>> assortativity;
    std::optional<CommunitiesSection> communities;
    std::optional<ErgmReport> ergm;
    std::map<std::string, std::string> section_errors;
};

// Builds the requested network and runs the configured sub-analyses.
// Sub-analysis failures are collected into section_errors; the bundle is
// returned partially filled rather than thrown away.
AnalysisBundle analyze(NetworkKind kind, const std::vector<OrgRecord>& orgs,
                       const std::vector<AcquisitionEvent>& events,
                       const AnalyzeOptions& options);

enum class RenderFormat { Json, Csv, Markdown };

std::optional<RenderFormat> render_format_from_string(std::string_view name);

nlohmann::json bundle_to_json(const AnalysisBundle& bundle);
AnalysisBundle bundle_from_json(const nlohmann::json& j);

// json: bundle_to_json dumped with 2-space indent. csv: long-format rows
// (section,row,column,value). markdown: one table per populated section with
// row names matching the published table wording.
std::string render(const AnalysisBundle& bundle, RenderFormat format);

}  // namespace acqgraph
