#include "acqgraph/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <tuple>
#include <unordered_map>
#include <unordered_set>

#include "acqgraph/csv.hpp"
#include "acqgraph/errors.hpp"

namespace acqgraph {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return s;
}

void require_header(const CsvTable& table, const std::string& origin,
                    const std::vector<std::string>& expected,
                    std::size_t allowed_extra = 0) {
    const bool prefix_ok =
        table.header.size() >= expected.size() &&
        std::equal(expected.begin(), expected.end(), table.header.begin());
    if (!prefix_ok || table.header.size() > expected.size() + allowed_extra) {
        std::string want;
        for (const auto& h : expected) {
            if (!want.empty()) want += ',';
            want += h;
        }
        throw DataError(origin + ": header mismatch, expected \"" + want + "\"");
    }
}

}  // namespace

std::vector<std::string> split_list_field(const std::string& field) {
    std::vector<std::string> items;
    std::size_t start = 0;
    while (start <= field.size()) {
        const std::size_t comma = field.find(',', start);
        const std::size_t end = comma == std::string::npos ? field.size() : comma;
        std::string item = trim(field.substr(start, end - start));
        if (!item.empty()) items.push_back(std::move(item));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return items;
}

RawTables parse_tables(const std::string& org_path, const std::string& acq_path,
                       const std::string& desc_path) {
    const CsvTable orgs = read_csv_file(org_path);
    require_header(orgs, org_path,
                   {"org_id", "name", "country", "region", "city",
                    "category_list", "category_group_list", "founded_on"},
                   /*allowed_extra=*/2);
    const bool has_primaries = orgs.header.size() == 10;
    if (orgs.header.size() == 9) {
        throw DataError(org_path +
                        ": primary columns must come in pairs "
                        "(primary_category,primary_category_group)");
    }

    const CsvTable acqs = read_csv_file(acq_path);
    require_header(acqs, acq_path,
                   {"acquirer_id", "acquiree_id", "acquisition_type",
                    "acquired_on"});

    const CsvTable descs = read_csv_file(desc_path);
    require_header(descs, desc_path, {"org_id", "description"});

    std::unordered_map<std::string, std::string> desc_by_id;
    desc_by_id.reserve(descs.rows.size());
    for (std::size_t i = 0; i < descs.rows.size(); ++i) {
        const auto& row = descs.rows[i];
        if (!desc_by_id.emplace(row[0], row[1]).second) {
            throw DataError(desc_path + ":" +
                            std::to_string(descs.row_lines[i]) +
                            ": duplicate org_id \"" + row[0] + "\"");
        }
    }

    RawTables out;
    out.orgs.reserve(orgs.rows.size());
    std::unordered_set<std::string> seen_ids;
    seen_ids.reserve(orgs.rows.size());
    for (std::size_t i = 0; i < orgs.rows.size(); ++i) {
        const auto& row = orgs.rows[i];
        if (!seen_ids.insert(row[0]).second) {
            throw DataError(org_path + ":" + std::to_string(orgs.row_lines[i]) +
                            ": duplicate org_id \"" + row[0] + "\"");
        }
        RawOrgRow org;
        org.org_id = row[0];
        org.name = row[1];
        org.country = row[2];
        org.region = row[3];
        org.city = row[4];
        org.category_list = row[5];
        org.category_group_list = row[6];
        org.founded_on = row[7];
        if (has_primaries) {
            if (!row[8].empty()) org.primary_category = row[8];
            if (!row[9].empty()) org.primary_category_group = row[9];
        }
        auto it = desc_by_id.find(org.org_id);
        org.description = it == desc_by_id.end() ? std::string() : it->second;
        out.orgs.push_back(std::move(org));
    }

    out.acquisitions.reserve(acqs.rows.size());
    for (const auto& row : acqs.rows) {
        out.acquisitions.push_back({row[0], row[1], row[2], row[3]});
    }
    return out;
}

CleanResult clean(const RawTables& raw) {
    CleanResult result;
    CleaningReport& report = result.report;
    report.rows_in = raw.acquisitions.size();
    report.orgs_in = raw.orgs.size();
    report.removed_by_rule = {
        {"date/type", 0}, {"dup", 0}, {"self", 0}, {"incomplete-org", 0}};

    // An org survives the completeness rule when every required field is
    // present and the founding date parses to a month.
    struct ParsedOrg {
        const RawOrgRow* row;
        std::vector<std::string> categories;
        std::vector<std::string> groups;
        MonthIndex founded = 0;
        bool complete = false;
    };
    std::unordered_map<std::string, ParsedOrg> orgs_by_id;
    orgs_by_id.reserve(raw.orgs.size());
    for (const auto& org : raw.orgs) {
        ParsedOrg parsed;
        parsed.row = &org;
        parsed.categories = split_list_field(org.category_list);
        parsed.groups = split_list_field(org.category_group_list);
        const auto founded = parse_year_month(org.founded_on);
        parsed.complete = !org.country.empty() && !org.region.empty() &&
                          !org.city.empty() && !org.description.empty() &&
                          !parsed.categories.empty() && !parsed.groups.empty() &&
                          founded.has_value();
        if (founded) parsed.founded = *founded;
        orgs_by_id.emplace(org.org_id, std::move(parsed));
    }

    auto org_complete = [&](const std::string& id) {
        const auto it = orgs_by_id.find(id);
        return it != orgs_by_id.end() && it->second.complete;
    };

    std::set<std::tuple<std::string, std::string, MonthIndex>> seen;
    std::vector<AcquisitionEvent> events;
    for (const auto& row : raw.acquisitions) {
        const auto month = parse_year_month(row.acquired_on);
        if (!month || lower(trim(row.acquisition_type)) != "acquisition") {
            ++report.removed_by_rule["date/type"];
            continue;
        }
        if (!seen.emplace(row.acquirer_id, row.acquiree_id, *month).second) {
            ++report.removed_by_rule["dup"];
            continue;
        }
        if (row.acquirer_id == row.acquiree_id) {
            ++report.removed_by_rule["self"];
            continue;
        }
        if (!org_complete(row.acquirer_id) || !org_complete(row.acquiree_id)) {
            ++report.removed_by_rule["incomplete-org"];
            continue;
        }
        events.push_back(
            {row.acquirer_id, row.acquiree_id, *month, "acquisition"});
    }

    // Garbage-collect organizations no surviving acquisition references.
    std::unordered_set<std::string> referenced;
    for (const auto& event : events) {
        referenced.insert(event.acquirer_id);
        referenced.insert(event.acquiree_id);
    }
    for (const auto& org : raw.orgs) {
        if (!referenced.count(org.org_id)) continue;
        const ParsedOrg& parsed = orgs_by_id.at(org.org_id);
        OrgRecord record;
        record.org_id = org.org_id;
        record.name = org.name;
        record.country = org.country;
        record.region = org.region;
        record.city = org.city;
        record.category_list = parsed.categories;
        record.category_group_list = parsed.groups;
        record.primary_category = org.primary_category;
        record.primary_category_group = org.primary_category_group;
        record.founded_month = parsed.founded;
        record.description = org.description;
        result.orgs.push_back(std::move(record));
    }

    result.events = std::move(events);
    report.rows_out = result.events.size();
    report.orgs_out = result.orgs.size();
    report.removal_fraction =
        report.rows_in == 0
            ? 0.0
            : 1.0 - static_cast<double>(report.rows_out) /
                        static_cast<double>(report.rows_in);
    return result;
}

}  // namespace acqgraph
