#include <doctest.h>

#include <cmath>

#include "acqgraph/builders.hpp"
#include "acqgraph/csv.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/ingest.hpp"
#include "acqgraph/metrics.hpp"
#include "acqgraph/synthgen.hpp"
#include "acqgraph/text.hpp"

using namespace acqgraph;

namespace {

RawTables parse_result(const SynthResult& result) {
    RawTables raw;
    const auto orgs = parse_csv(result.organizations_csv, "orgs");
    const auto acqs = parse_csv(result.acquisitions_csv, "acqs");
    const auto descs = parse_csv(result.descriptions_csv, "descs");
    std::map<std::string, std::string> desc_by_id;
    for (const auto& row : descs.rows) desc_by_id[row[0]] = row[1];
    for (const auto& row : orgs.rows) {
        RawOrgRow org;
        org.org_id = row[0];
        org.name = row[1];
        org.country = row[2];
        org.region = row[3];
        org.city = row[4];
        org.category_list = row[5];
        org.category_group_list = row[6];
        org.founded_on = row[7];
        org.description = desc_by_id.count(row[0]) ? desc_by_id[row[0]] : "";
        raw.orgs.push_back(std::move(org));
    }
    for (const auto& row : acqs.rows) {
        raw.acquisitions.push_back({row[0], row[1], row[2], row[3]});
    }
    return raw;
}

}  // namespace

TEST_SUITE_BEGIN("synthgen");

TEST_CASE("generation is byte-identical for a fixed seed") {
    SynthConfig config;
    config.n_orgs = 80;
    config.n_events = 150;
    config.seed = 42;
    const auto a = generate(config);
    const auto b = generate(config);
    CHECK(a.organizations_csv == b.organizations_csv);
    CHECK(a.acquisitions_csv == b.acquisitions_csv);
    CHECK(a.descriptions_csv == b.descriptions_csv);
    CHECK(a.edges_coefficient == b.edges_coefficient);

    SynthConfig other = config;
    other.seed = 43;
    CHECK(generate(other).acquisitions_csv != a.acquisitions_csv);
}

TEST_CASE("clean data passes ingest with zero removals") {
    SynthConfig config;
    config.n_orgs = 100;
    config.n_events = 200;
    config.seed = 7;
    config.homophily = {{"country", 1.0}, {"category", 0.5}};
    const auto result = generate(config);
    const auto cleaned = clean(parse_result(result));
    CHECK(cleaned.report.rows_in == result.n_events_realized);
    CHECK(cleaned.report.rows_out == cleaned.report.rows_in);
    for (const auto& [rule, count] : cleaned.report.removed_by_rule) {
        CHECK(count == 0);
    }
}

TEST_CASE("defect injection plants exact removal counts") {
    SynthConfig config;
    config.n_orgs = 60;
    config.n_events = 120;
    config.seed = 11;
    config.defects = {3, 2, 4};  // missing_date, duplicate, incomplete_org
    const auto result = generate(config);
    const auto cleaned = clean(parse_result(result));
    CHECK(cleaned.report.removed_by_rule.at("date/type") == 3);
    CHECK(cleaned.report.removed_by_rule.at("dup") == 2);
    CHECK(cleaned.report.removed_by_rule.at("incomplete-org") == 4);
    CHECK(cleaned.report.rows_out == result.n_events_realized);
}

TEST_CASE("expected event count calibration lands near the target") {
    SynthConfig config;
    config.n_orgs = 150;
    config.n_events = 300;
    config.seed = 3;
    config.homophily = {{"country", 1.5}};
    const auto result = generate(config);
    // binomial noise: sd <= sqrt(n_events); allow 4 sigma
    CHECK(std::abs(static_cast<double>(result.n_events_realized) - 300.0) <=
          4.0 * std::sqrt(300.0));
}

TEST_CASE("category inference recovers the planted primaries") {
    SynthConfig config;
    config.n_orgs = 120;
    config.n_events = 240;
    config.seed = 19;
    const auto result = generate(config);
    auto cleaned = clean(parse_result(result));
    infer_primaries(cleaned.orgs);
    std::map<std::string, std::pair<std::string, std::string>> truth;
    for (const auto& t : result.truth_primaries) truth[t[0]] = {t[1], t[2]};
    std::size_t total = 0, recovered = 0;
    for (const auto& org : cleaned.orgs) {
        ++total;
        const auto& [cat, group] = truth.at(org.org_id);
        if (org.primary_category == cat && org.primary_category_group == group) {
            ++recovered;
        }
    }
    REQUIRE(total > 0);
    CHECK(static_cast<double>(recovered) >= 0.95 * static_cast<double>(total));
}

TEST_CASE("strong country homophily keeps events domestic") {
    SynthConfig config;
    config.n_orgs = 80;
    config.n_events = 120;
    config.seed = 23;
    config.homophily = {{"country", 50.0}};  // surrogate for +infinity
    const auto result = generate(config);
    auto cleaned = clean(parse_result(result));
    std::map<std::string, std::string> country;
    for (const auto& org : cleaned.orgs) country[org.org_id] = org.country;
    for (const auto& event : cleaned.events) {
        CHECK(country.at(event.acquirer_id) == country.at(event.acquiree_id));
    }
}

TEST_CASE("zero homophily leaves assortativity near zero") {
    SynthConfig config;
    config.n_orgs = 400;
    config.n_events = 5000;
    config.n_countries = 5;
    config.seed = 29;
    const auto result = generate(config);
    auto cleaned = clean(parse_result(result));
    infer_primaries(cleaned.orgs);
    const auto g = build_acquisition(cleaned.orgs, cleaned.events);
    CHECK(std::abs(assortativity_categorical(g, "country")) < 0.05);
}

TEST_CASE("country assortativity rises with the homophily coefficient") {
    for (const std::uint64_t seed : {101ULL, 202ULL, 303ULL}) {
        double previous = -2.0;
        for (const double level : {0.0, 1.5, 3.0}) {
            SynthConfig config;
            config.n_orgs = 250;
            config.n_events = 1500;
            config.n_countries = 5;
            config.seed = seed;
            config.homophily = {{"country", level}};
            const auto result = generate(config);
            auto cleaned = clean(parse_result(result));
            infer_primaries(cleaned.orgs);
            const auto g = build_acquisition(cleaned.orgs, cleaned.events);
            const double r = assortativity_categorical(g, "country");
            CHECK(r > previous);
            previous = r;
        }
    }
}

TEST_CASE("dates respect founding months") {
    SynthConfig config;
    config.n_orgs = 60;
    config.n_events = 150;
    config.seed = 31;
    const auto result = generate(config);
    auto cleaned = clean(parse_result(result));
    std::map<std::string, MonthIndex> founded;
    for (const auto& org : cleaned.orgs) founded[org.org_id] = org.founded_month;
    for (const auto& event : cleaned.events) {
        CHECK(event.date_month >= founded.at(event.acquirer_id));
        CHECK(event.date_month >= founded.at(event.acquiree_id));
        CHECK(event.date_month <= config.founding_range.second);
    }
}

TEST_CASE("infeasible calibration is rejected") {
    SynthConfig config;
    config.n_orgs = 5;
    config.n_events = 100;  // only 20 dyads exist
    CHECK_THROWS_AS(generate(config), DataError);
}

TEST_CASE("config json round trip") {
    SynthConfig config;
    config.n_orgs = 77;
    config.homophily = {{"country", 1.25}};
    config.defects.duplicate = 3;
    const auto j = config.to_json();
    const auto back = SynthConfig::from_json(j);
    CHECK(back.n_orgs == 77);
    CHECK(back.homophily.at("country") == 1.25);
    CHECK(back.defects.duplicate == 3);
    CHECK(back.founding_range == config.founding_range);
}

TEST_SUITE_END();
