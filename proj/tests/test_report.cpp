#include <doctest.h>

#include <algorithm>
#include <set>

#include "acqgraph/builders.hpp"
#include "acqgraph/report.hpp"
#include "acqgraph/rng.hpp"
#include "oracles.hpp"

using namespace acqgraph;

namespace {

OrgRecord org(const std::string& id, const std::string& country,
              const std::string& city, MonthIndex founded,
              const std::string& category = "Software",
              const std::string& group = "Tech") {
    OrgRecord record;
    record.org_id = id;
    record.name = "Name " + id;
    record.country = country;
    record.region = country + "-R";
    record.city = city;
    record.category_list = {category};
    record.category_group_list = {group};
    record.primary_category = category;
    record.primary_category_group = group;
    record.founded_month = founded;
    record.description = "software things";
    return record;
}

struct Fixture {
    std::vector<OrgRecord> orgs;
    std::vector<AcquisitionEvent> events;
};

Fixture fixture(std::uint64_t seed, std::size_t n_orgs, std::size_t n_events) {
    SplitMix64 rng(seed);
    Fixture f;
    const char* countries[] = {"US", "UK", "DE"};
    const char* categories[] = {"Software", "Health Care", "Banking"};
    const char* groups[] = {"Tech", "Life"};
    for (std::size_t i = 0; i < n_orgs; ++i) {
        const auto c = countries[rng.below(3)];
        f.orgs.push_back(org("o" + std::to_string(i), c,
                             std::string(c) + "-city" + std::to_string(rng.below(4)),
                             static_cast<MonthIndex>(2300 + rng.below(200)),
                             categories[rng.below(3)], groups[rng.below(2)]));
    }
    std::set<std::pair<std::size_t, std::size_t>> seen;
    while (f.events.size() < n_events) {
        const std::size_t a = rng.below(n_orgs);
        const std::size_t b = rng.below(n_orgs);
        if (a == b || !seen.emplace(a, b).second) continue;
        f.events.push_back({"o" + std::to_string(a), "o" + std::to_string(b),
                            static_cast<MonthIndex>(2500 + rng.below(24)),
                            "acquisition"});
    }
    return f;
}

}  // namespace

TEST_SUITE_BEGIN("report");

TEST_CASE("triangle acquisition bundle has density 0.5") {
    Fixture f;
    f.orgs = {org("a", "US", "x", 2300), org("b", "US", "y", 2301),
              org("c", "UK", "z", 2302)};
    f.events = {{"a", "b", 2400, "acquisition"},
                {"b", "c", 2401, "acquisition"},
                {"a", "c", 2402, "acquisition"}};
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, {});
    CHECK(bundle.structure.density == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(bundle.structure.n_nodes == 3);
    CHECK_FALSE(bundle.ergm.has_value());
    CHECK_FALSE(bundle.baseline.has_value());
}

TEST_CASE("bundle hash is stable under event permutation") {
    auto f = fixture(4, 20, 60);
    AnalyzeOptions options;
    const auto a = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    std::reverse(f.events.begin(), f.events.end());
    std::reverse(f.orgs.begin(), f.orgs.end());
    const auto b = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    CHECK(a.graph_hash == b.graph_hash);
}

TEST_CASE("hashes differ across networks built from the same data") {
    const auto f = fixture(5, 20, 50);
    const auto a = analyze(NetworkKind::Acquisition, f.orgs, f.events, {});
    const auto b = analyze(NetworkKind::CommonAcquirer, f.orgs, f.events, {});
    CHECK(a.graph_hash != b.graph_hash);
}

TEST_CASE("same input twice gives identical json") {
    const auto f = fixture(6, 25, 70);
    AnalyzeOptions options;
    options.with_baseline = true;
    options.with_centrality = true;
    options.with_assortativity = true;
    options.with_communities = true;
    options.with_ergm = true;
    options.baseline_samples = 3;
    options.seed = 9;
    const auto a = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    const auto b = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    CHECK(bundle_to_json(a) == bundle_to_json(b));
}

TEST_CASE("full bundle json round trips through parse") {
    const auto f = fixture(7, 30, 80);
    AnalyzeOptions options;
    options.with_baseline = true;
    options.with_centrality = true;
    options.with_assortativity = true;
    options.with_communities = true;
    options.with_ergm = true;
    options.baseline_samples = 2;
    options.seed = 13;
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    const std::string rendered = render(bundle, RenderFormat::Json);
    const auto reparsed = bundle_from_json(nlohmann::json::parse(rendered));
    CHECK(render(reparsed, RenderFormat::Json) == rendered);
}

TEST_CASE("section hashes embed the bundle hash") {
    const auto f = fixture(8, 15, 40);
    AnalyzeOptions options;
    options.with_assortativity = true;
    options.with_communities = true;
    const auto bundle = analyze(NetworkKind::CommonAcquirer, f.orgs, f.events, options);
    const auto j = bundle_to_json(bundle);
    CHECK(j.at("structure").at("graph_hash") == bundle.graph_hash);
    if (j.contains("assortativity")) {
        CHECK(j.at("assortativity").at("graph_hash") == bundle.graph_hash);
    }
    if (j.contains("communities")) {
        CHECK(j.at("communities").at("graph_hash") == bundle.graph_hash);
    }
}

TEST_CASE("markdown render carries the published row names") {
    const auto f = fixture(9, 25, 60);
    AnalyzeOptions options;
    options.with_baseline = true;
    options.with_assortativity = true;
    options.with_ergm = true;
    options.baseline_samples = 2;
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    const std::string md = render(bundle, RenderFormat::Markdown);
    CHECK(md.find("Largest weakly connected component size") != std::string::npos);
    CHECK(md.find("Largest strongly connected component size") != std::string::npos);
    CHECK(md.find("Average clustering coefficient") != std::string::npos);
    CHECK(md.find("Category group") != std::string::npos);
    CHECK(md.find("Founding date (year-month)") != std::string::npos);
    CHECK(md.find("Node degree") != std::string::npos);
    CHECK(md.find("Baseline model") != std::string::npos);
    CHECK(md.find("* p < 0.05, ** p < 0.01, *** p < 0.001") != std::string::npos);
}

TEST_CASE("undirected bundles use the undirected component wording") {
    const auto f = fixture(10, 25, 60);
    const auto bundle = analyze(NetworkKind::CommonAcquirer, f.orgs, f.events, {});
    const std::string md = render(bundle, RenderFormat::Markdown);
    CHECK(md.find("Largest connected component size") != std::string::npos);
    CHECK(md.find("Largest strongly connected") == std::string::npos);
}

TEST_CASE("null assortativity renders as undefined") {
    // one org pair, identical founding month: numeric assortativity undefined
    Fixture f;
    f.orgs = {org("a", "US", "x", 2400), org("b", "US", "x", 2400)};
    f.events = {{"a", "b", 2500, "acquisition"}};
    AnalyzeOptions options;
    options.with_assortativity = true;
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    REQUIRE(bundle.assortativity.has_value());
    CHECK_FALSE(bundle.assortativity->at("founded_month").has_value());
    const std::string md = render(bundle, RenderFormat::Markdown);
    CHECK(md.find("undefined") != std::string::npos);
    const auto j = bundle_to_json(bundle);
    CHECK(j.at("assortativity").at("founded_month").is_null());
}

TEST_CASE("csv render is long format with a header") {
    const auto f = fixture(11, 20, 50);
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, {});
    const std::string csv = render(bundle, RenderFormat::Csv);
    CHECK(csv.rfind("section,row,column,value\n", 0) == 0);
    CHECK(csv.find("structure,Density,value,") != std::string::npos);
}

TEST_CASE("sub-analysis failures are annotated, not fatal") {
    // two orgs, one edge: eigenvector centrality is degenerate on the DAG
    Fixture f;
    f.orgs = {org("a", "US", "x", 2300), org("b", "US", "y", 2301)};
    f.events = {{"a", "b", 2400, "acquisition"}};
    AnalyzeOptions options;
    options.with_centrality = true;
    const auto bundle = analyze(NetworkKind::Acquisition, f.orgs, f.events, options);
    CHECK(bundle.centralities.has_value());  // the other metrics are present
    CHECK(bundle.section_errors.count("centrality.eigenvector") == 1);
}

TEST_SUITE_END();
