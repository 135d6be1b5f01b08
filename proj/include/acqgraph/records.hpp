#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace acqgraph {

// Months since 1800-01 (1800-01 == 0): year*12 + (month-1) - 1800*12.
// Order-preserving with uniform steps, so differences are month counts.
using MonthIndex = int;

// Accepts YYYY-MM and YYYY-MM-DD; anything else (including year-only dates)
// yields nullopt.
std::optional<MonthIndex> parse_year_month(std::string_view text);
std::string format_year_month(MonthIndex month);

struct OrgRecord {
    std::string org_id;
    std::string name;
    std::string country;
    std::string region;
    std::string city;
    std::vector<std::string> category_list;
    std::vector<std::string> category_group_list;
    std::optional<std::string> primary_category;
    std::optional<std::string> primary_category_group;
    MonthIndex founded_month = 0;
    std::string description;

    bool operator==(const OrgRecord&) const = default;
};

struct AcquisitionEvent {
    std::string acquirer_id;
    std::string acquiree_id;
    MonthIndex date_month = 0;
    std::string acquisition_type;

    bool operator==(const AcquisitionEvent&) const = default;
};

// Acquisition-row accounting. Rules are attributed first-match, so the
// per-rule counts partition the removals: rows_in == rows_out + sum(removed).
struct CleaningReport {
    std::size_t rows_in = 0;
    std::size_t rows_out = 0;
    std::map<std::string, std::size_t> removed_by_rule;
    double removal_fraction = 0.0;
    std::size_t orgs_in = 0;
    std::size_t orgs_out = 0;

    bool operator==(const CleaningReport&) const = default;
};

nlohmann::json to_json(const CleaningReport& report);

}  // namespace acqgraph
