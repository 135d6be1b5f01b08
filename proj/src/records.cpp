#include "acqgraph/records.hpp"

#include <cctype>
#include <cstdio>

namespace acqgraph {

namespace {

bool parse_digits(std::string_view text, int& value) {
    value = 0;
    for (char c : text) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
        value = value * 10 + (c - '0');
    }
    return !text.empty();
}

}  // namespace

std::optional<MonthIndex> parse_year_month(std::string_view text) {
    // YYYY-MM (7 chars) or YYYY-MM-DD (10 chars).
    if (text.size() != 7 && text.size() != 10) return std::nullopt;
    if (text[4] != '-') return std::nullopt;
    int year = 0, month = 0;
    if (!parse_digits(text.substr(0, 4), year)) return std::nullopt;
    if (!parse_digits(text.substr(5, 2), month)) return std::nullopt;
    if (month < 1 || month > 12) return std::nullopt;
    if (text.size() == 10) {
        if (text[7] != '-') return std::nullopt;
        int day = 0;
        if (!parse_digits(text.substr(8, 2), day)) return std::nullopt;
        if (day < 1 || day > 31) return std::nullopt;
    }
    return year * 12 + (month - 1) - 1800 * 12;
}

std::string format_year_month(MonthIndex month) {
    const int total = month + 1800 * 12;
    int year = total / 12;
    int rem = total % 12;
    if (rem < 0) {
        rem += 12;
        --year;
    }
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d", year, rem + 1);
    return buf;
}

nlohmann::json to_json(const CleaningReport& report) {
    return nlohmann::json{
        {"rows_in", report.rows_in},
        {"rows_out", report.rows_out},
        {"removed_by_rule", report.removed_by_rule},
        {"removal_fraction", report.removal_fraction},
        {"orgs_in", report.orgs_in},
        {"orgs_out", report.orgs_out},
    };
}

}  // namespace acqgraph
