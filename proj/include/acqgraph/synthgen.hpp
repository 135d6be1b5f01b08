#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "acqgraph/records.hpp"

namespace acqgraph {

// Rows appended on top of the clean base data, each engineered to be removed
// by exactly one cleaning rule so ingest tests know the planted counts.
struct DefectSpec {
    std::size_t missing_date = 0;
    std::size_t duplicate = 0;
    std::size_t incomplete_org = 0;

    bool operator==(const DefectSpec&) const = default;
};

struct SynthConfig {
    std::size_t n_orgs = 200;
    std::size_t n_events = 400;
    std::size_t n_countries = 8;
    std::size_t n_regions = 16;
    std::size_t n_cities = 32;
    std::size_t n_categories = 12;
    std::size_t n_category_groups = 6;
    // match coefficients for country/region/city/category/category_group,
    // absolute-difference coefficient for founded_month
    std::map<std::string, double> homophily;
    std::pair<MonthIndex, MonthIndex> founding_range = {
        (1995 - 1800) * 12, (2015 - 1800) * 12};
    std::uint64_t seed = 0;
    DefectSpec defects;

    static SynthConfig from_json(const nlohmann::json& j);
    nlohmann::json to_json() const;
};

struct SynthResult {
    std::string organizations_csv;
    std::string acquisitions_csv;
    std::string descriptions_csv;
    // calibrated intercept of the sampling model; together with the
    // configured homophily coefficients this is the ground truth an ERGM fit
    // should recover
    double edges_coefficient = 0.0;
    std::size_t n_events_realized = 0;
    // org_id -> (primary category, primary category group) actually planted
    std::vector<std::array<std::string, 3>> truth_primaries;
};

// Deterministic per seed. Organizations have nested geography (city inside
// region inside country), alphabetical category lists, and descriptions that
// repeat the primary category and group tokens so cosine inference can
// recover them. Acquisition dyads are sampled independently with probability
// sigmoid(intercept + homophily terms), the intercept bisected so the
// expected event count equals n_events.
SynthResult generate(const SynthConfig& config);

// Writes organizations.csv, acquisitions.csv, descriptions.csv into dir.
void write_synth_files(const SynthResult& result, const std::string& dir);

}  // namespace acqgraph
