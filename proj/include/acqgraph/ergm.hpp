#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "acqgraph/graph.hpp"

namespace acqgraph {

// Dyad-level model term. Edges is the intercept column; Match(attr) is 1
// when both endpoints share the label; AbsDiff(attr) is |x_u - x_v| of a
// numeric attribute.
struct ErgmTerm {
    enum class Kind { Edges, Match, AbsDiff };
    Kind kind = Kind::Edges;
    std::string attribute;

    static ErgmTerm edges() { return {Kind::Edges, ""}; }
    static ErgmTerm match(std::string attr) { return {Kind::Match, std::move(attr)}; }
    static ErgmTerm absdiff(std::string attr) { return {Kind::AbsDiff, std::move(attr)}; }

    // "edges", "match:country", "absdiff:founded_month"
    std::string name() const;
    // Table-style label: "edges", "Country", "Founding date (year-month)"
    std::string label() const;
    static std::optional<ErgmTerm> parse(std::string_view name);

    bool operator==(const ErgmTerm&) const = default;
};

// The default term set: edges + matches on the five categorical features +
// absolute founding-date difference in months.
std::vector<ErgmTerm> default_ergm_terms();

struct ErgmSampling {
    enum class Mode { Exact, CaseControl };
    Mode mode = Mode::Exact;
    double ratio = 5.0;  // sampled non-edges per edge (case-control)
    std::uint64_t seed = 0;

    static ErgmSampling exact() { return {}; }
    static ErgmSampling case_control(double ratio, std::uint64_t seed) {
        return {Mode::CaseControl, ratio, seed};
    }
};

// Per-dyad design matrix with edge indicators. Case-control rows carry
// inverse-sampling weights so estimates stay consistent for every term.
struct DyadDesign {
    std::vector<ErgmTerm> terms;
    std::vector<double> features;  // row-major, n_rows x terms.size()
    std::vector<std::int8_t> labels;
    std::vector<double> weights;
    std::size_t n_dyads_total = 0;

    std::size_t n_rows() const { return labels.size(); }
    std::size_t n_terms() const { return terms.size(); }
    std::span<const double> row(std::size_t i) const {
        return {features.data() + i * terms.size(), terms.size()};
    }
};

// Enumerates ordered non-self dyads for directed graphs, unordered for
// undirected; the edge indicator binarizes the weight. Exact mode refuses
// dyad counts above the budget. Raises DataError when a referenced attribute
// is missing from a node.
DyadDesign build_design(const AttributedGraph& g,
                        const std::vector<ErgmTerm>& terms,
                        const ErgmSampling& sampling = ErgmSampling::exact(),
                        std::size_t dyad_budget = 20'000'000);

struct ErgmFit {
    std::vector<double> theta;
    std::vector<double> std_err;
    double log_likelihood = 0.0;
    double aic = 0.0;
    bool converged = false;
    int iterations = 0;
};

// Newton / IRLS maximum likelihood of the weighted Bernoulli model.
// Perfect separation and singular information raise errors rather than
// returning garbage estimates.
ErgmFit fit(const DyadDesign& design, double tolerance = 1e-8,
            int max_iterations = 50);

// Weighted Bernoulli log-likelihood and its gradient at theta; exposed so
// the estimates can be checked against finite differences. The extended
// precision variant keeps central-difference quotients out of the roundoff
// floor.
double ergm_log_likelihood(const DyadDesign& design,
                           std::span<const double> theta);
long double ergm_log_likelihood_precise(const DyadDesign& design,
                                        std::span<const double> theta);
std::vector<double> ergm_score(const DyadDesign& design,
                               std::span<const double> theta);

struct TermSummary {
    std::string term;   // machine name
    std::string label;  // table label
    double estimate = 0.0;
    double std_err = 0.0;
    double z = 0.0;
    double p_value = 1.0;
    std::string stars;  // "", "*", "**", "***"
};

struct ErgmReport {
    std::vector<TermSummary> terms;
    double log_likelihood = 0.0;
    double aic = 0.0;
    bool converged = false;
    int iterations = 0;
};

ErgmReport summarize(const ErgmFit& fit, const DyadDesign& design);

nlohmann::json to_json(const ErgmReport& report);

}  // namespace acqgraph
