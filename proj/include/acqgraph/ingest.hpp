#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acqgraph/records.hpp"

namespace acqgraph {

// Row as read from the files, before any cleaning. Lists are still the raw
// quoted field; dates are the raw string. The two primary_* members come from
// the optional trailing columns of organizations.csv (used when category
// inference is turned off).
struct RawOrgRow {
    std::string org_id;
    std::string name;
    std::string country;
    std::string region;
    std::string city;
    std::string category_list;
    std::string category_group_list;
    std::string founded_on;
    std::string description;
    std::optional<std::string> primary_category;
    std::optional<std::string> primary_category_group;
};

struct RawAcquisitionRow {
    std::string acquirer_id;
    std::string acquiree_id;
    std::string acquisition_type;
    std::string acquired_on;
};

struct RawTables {
    std::vector<RawOrgRow> orgs;
    std::vector<RawAcquisitionRow> acquisitions;
};

// Reads the three tables and left-joins descriptions onto organizations by
// org_id (missing description -> empty string). No cleaning happens here.
// Raises DataError on malformed CSV, schema mismatch, or duplicate org_id.
RawTables parse_tables(const std::string& org_path, const std::string& acq_path,
                       const std::string& desc_path);

struct CleanResult {
    std::vector<OrgRecord> orgs;
    std::vector<AcquisitionEvent> events;
    CleaningReport report;
};

// Cleaning rules, applied in order with first-match attribution:
//   date/type      missing or unparseable date, or type != "acquisition"
//   dup            duplicate (acquirer, acquiree, month); first kept
//   self           acquirer == acquiree
//   incomplete-org an endpoint org is absent or lacks a required field
// Organizations not referenced by any surviving acquisition are dropped
// afterwards; that affects orgs_in/orgs_out, not the row counts.
CleanResult clean(const RawTables& raw);

// Splits a quoted list field on commas, trimming whitespace and dropping
// empty items.
std::vector<std::string> split_list_field(const std::string& field);

}  // namespace acqgraph
