#include "acqgraph/synthgen.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include "acqgraph/csv.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/rng.hpp"

namespace acqgraph {

SynthConfig SynthConfig::from_json(const nlohmann::json& j) {
    SynthConfig c;
    auto load = [&j](const char* key, auto& slot) {
        if (j.contains(key)) slot = j.at(key).get<std::decay_t<decltype(slot)>>();
    };
    load("n_orgs", c.n_orgs);
    load("n_events", c.n_events);
    load("n_countries", c.n_countries);
    load("n_regions", c.n_regions);
    load("n_cities", c.n_cities);
    load("n_categories", c.n_categories);
    load("n_category_groups", c.n_category_groups);
    load("seed", c.seed);
    if (j.contains("homophily")) {
        c.homophily = j.at("homophily").get<std::map<std::string, double>>();
    }
    if (j.contains("founding_from")) {
        const auto m = parse_year_month(j.at("founding_from").get<std::string>());
        if (!m) throw DataError("bad founding_from in config");
        c.founding_range.first = *m;
    }
    if (j.contains("founding_to")) {
        const auto m = parse_year_month(j.at("founding_to").get<std::string>());
        if (!m) throw DataError("bad founding_to in config");
        c.founding_range.second = *m;
    }
    if (j.contains("defects")) {
        const auto& d = j.at("defects");
        if (d.contains("missing_date")) c.defects.missing_date = d.at("missing_date");
        if (d.contains("duplicate")) c.defects.duplicate = d.at("duplicate");
        if (d.contains("incomplete_org")) {
            c.defects.incomplete_org = d.at("incomplete_org");
        }
    }
    return c;
}

nlohmann::json SynthConfig::to_json() const {
    return nlohmann::json{
        {"n_orgs", n_orgs},
        {"n_events", n_events},
        {"n_countries", n_countries},
        {"n_regions", n_regions},
        {"n_cities", n_cities},
        {"n_categories", n_categories},
        {"n_category_groups", n_category_groups},
        {"homophily", homophily},
        {"founding_from", format_year_month(founding_range.first)},
        {"founding_to", format_year_month(founding_range.second)},
        {"seed", seed},
        {"defects",
         {{"missing_date", defects.missing_date},
          {"duplicate", defects.duplicate},
          {"incomplete_org", defects.incomplete_org}}},
    };
}

namespace {

std::string tag(const char* prefix, std::size_t i) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%s%04zu", prefix, i);
    return buf;
}

const std::array<const char*, 16> kNoiseWords = {
    "platform", "solutions", "analytics", "digital",  "global",  "ventures",
    "systems",  "partners",  "services",  "insight",  "network", "studio",
    "dynamic",  "enterprise", "applied",  "frontier",
};

struct SynthOrg {
    std::string id;
    std::size_t city = 0, region = 0, country = 0;
    std::size_t category = 0, group = 0;
    std::vector<std::size_t> category_list, group_list;
    MonthIndex founded = 0;
    std::string description;
};

double sigmoid(double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                    : std::exp(x) / (1.0 + std::exp(x));
}

}  // namespace

SynthResult generate(const SynthConfig& config) {
    if (config.n_orgs < 2 || config.n_countries == 0 || config.n_regions == 0 ||
        config.n_cities == 0 || config.n_categories == 0 ||
        config.n_category_groups == 0) {
        throw DataError("synthetic config counts must be positive (n_orgs >= 2)");
    }
    if (config.founding_range.first > config.founding_range.second) {
        throw DataError("founding range is reversed");
    }
    const std::size_t n = config.n_orgs;
    const std::size_t dyads = n * (n - 1);
    if (config.n_events >= dyads) {
        throw DataError("cannot calibrate " + std::to_string(config.n_events) +
                        " events from " + std::to_string(dyads) + " dyads");
    }

    // nested geography: city -> region -> country by round robin
    std::vector<std::size_t> region_of_city(config.n_cities);
    std::vector<std::size_t> country_of_region(config.n_regions);
    for (std::size_t c = 0; c < config.n_cities; ++c) {
        region_of_city[c] = c % config.n_regions;
    }
    for (std::size_t r = 0; r < config.n_regions; ++r) {
        country_of_region[r] = r % config.n_countries;
    }

    SplitMix64 attr_rng(derive_seed(config.seed, "synth-orgs"));
    SplitMix64 desc_rng(derive_seed(config.seed, "synth-descriptions"));
    std::vector<SynthOrg> orgs(n);
    const MonthIndex f_lo = config.founding_range.first;
    const MonthIndex f_hi = config.founding_range.second;
    for (std::size_t i = 0; i < n; ++i) {
        SynthOrg& org = orgs[i];
        org.id = tag("org", i);
        org.city = attr_rng.below(config.n_cities);
        org.region = region_of_city[org.city];
        org.country = country_of_region[org.region];
        org.category = attr_rng.below(config.n_categories);
        org.group = attr_rng.below(config.n_category_groups);
        org.founded =
            f_lo + static_cast<MonthIndex>(
                       attr_rng.below(static_cast<std::uint64_t>(f_hi - f_lo) + 1));

        org.category_list = {org.category};
        const std::size_t extra_cats = attr_rng.below(3);
        for (std::size_t e = 0; e < extra_cats; ++e) {
            const std::size_t cat = attr_rng.below(config.n_categories);
            if (std::find(org.category_list.begin(), org.category_list.end(),
                          cat) == org.category_list.end()) {
                org.category_list.push_back(cat);
            }
        }
        std::sort(org.category_list.begin(), org.category_list.end());
        org.group_list = {org.group};
        if (attr_rng.below(2) == 1 && config.n_category_groups > 1) {
            const std::size_t grp = attr_rng.below(config.n_category_groups);
            if (grp != org.group) org.group_list.push_back(grp);
        }
        std::sort(org.group_list.begin(), org.group_list.end());

        // Description repeats the primary category and group tokens, then
        // pads with noise words; cosine against the list entries recovers
        // the primaries because the other candidates never appear.
        std::vector<std::string> words;
        for (int k = 0; k < 3; ++k) words.push_back(tag("sector", org.category));
        for (int k = 0; k < 3; ++k) words.push_back(tag("group", org.group));
        const std::size_t noise = 4 + desc_rng.below(4);
        for (std::size_t k = 0; k < noise; ++k) {
            words.push_back(kNoiseWords[desc_rng.below(kNoiseWords.size())]);
        }
        seeded_shuffle(words, desc_rng);
        std::string text;
        for (const auto& word : words) {
            if (!text.empty()) text += ' ';
            text += word;
        }
        org.description = std::move(text);
    }

    // homophily coefficients
    auto coef = [&](const char* key) {
        const auto it = config.homophily.find(key);
        return it == config.homophily.end() ? 0.0 : it->second;
    };
    const double b_country = coef("country");
    const double b_region = coef("region");
    const double b_city = coef("city");
    const double b_category = coef("category");
    const double b_group = coef("category_group");
    const double b_founded = coef("founded_month");

    // score of every ordered dyad, then bisect the intercept so the expected
    // edge count hits n_events
    std::vector<double> score;
    score.reserve(dyads);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const SynthOrg& a = orgs[i];
            const SynthOrg& b = orgs[j];
            double s = 0.0;
            if (a.country == b.country) s += b_country;
            if (a.region == b.region) s += b_region;
            if (a.city == b.city) s += b_city;
            if (a.category == b.category) s += b_category;
            if (a.group == b.group) s += b_group;
            s += b_founded * std::abs(static_cast<double>(a.founded - b.founded));
            score.push_back(s);
        }
    }
    const double target = static_cast<double>(config.n_events);
    double lo = -60.0, hi = 60.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        double expected = 0.0;
        for (const double s : score) expected += sigmoid(mid + s);
        (expected < target ? lo : hi) = mid;
    }
    const double intercept = 0.5 * (lo + hi);

    // sample events dyad by dyad; dates respect founded-before-acquired
    SplitMix64 edge_rng(derive_seed(config.seed, "synth-events"));
    SplitMix64 date_rng(derive_seed(config.seed, "synth-dates"));
    struct Event {
        std::size_t acquirer, acquiree;
        MonthIndex month;
    };
    std::vector<Event> events;
    std::size_t dyad = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            const double p = sigmoid(intercept + score[dyad]);
            ++dyad;
            if (edge_rng.uniform() >= p) continue;
            const MonthIndex earliest = std::max(orgs[i].founded, orgs[j].founded);
            const std::uint64_t span =
                static_cast<std::uint64_t>(f_hi - earliest) + 1;
            const MonthIndex month =
                earliest + static_cast<MonthIndex>(date_rng.below(span));
            events.push_back({i, j, month});
        }
    }

    SynthResult result;
    result.edges_coefficient = intercept;
    result.n_events_realized = events.size();

    // defect rows
    SplitMix64 defect_rng(derive_seed(config.seed, "synth-defects"));
    struct RawEventRow {
        std::string acquirer, acquiree, type, date;
    };
    std::vector<RawEventRow> event_rows;
    event_rows.reserve(events.size() + config.defects.missing_date +
                       config.defects.duplicate + config.defects.incomplete_org);
    for (const auto& e : events) {
        event_rows.push_back({orgs[e.acquirer].id, orgs[e.acquiree].id,
                              "acquisition", format_year_month(e.month)});
    }
    for (std::size_t d = 0; d < config.defects.missing_date; ++d) {
        const std::size_t i = defect_rng.below(n);
        std::size_t j = defect_rng.below(n);
        if (j == i) j = (j + 1) % n;
        event_rows.push_back({orgs[i].id, orgs[j].id, "acquisition", ""});
    }
    if (config.defects.duplicate > 0) {
        if (events.empty()) {
            throw DataError("cannot plant duplicates without base events");
        }
        std::vector<std::size_t> order(events.size());
        for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
        seeded_shuffle(order, defect_rng);
        // Copies of existing rows; repeats of the same original still count,
        // the first occurrence always survives dedup.
        for (std::size_t d = 0; d < config.defects.duplicate; ++d) {
            const auto& e = events[order[d % order.size()]];
            event_rows.push_back({orgs[e.acquirer].id, orgs[e.acquiree].id,
                                  "acquisition", format_year_month(e.month)});
        }
    }

    struct DefectOrg {
        std::string id;
        std::size_t country, region, city;
        MonthIndex founded;
    };
    std::vector<DefectOrg> defect_orgs;
    for (std::size_t d = 0; d < config.defects.incomplete_org; ++d) {
        DefectOrg org;
        org.id = tag("badorg", d);
        org.country = defect_rng.below(config.n_countries);
        org.region = defect_rng.below(config.n_regions);
        org.city = defect_rng.below(config.n_cities);
        org.founded = f_lo;
        defect_orgs.push_back(org);
        const std::size_t acquirer = defect_rng.below(n);
        event_rows.push_back({orgs[acquirer].id, org.id, "acquisition",
                              format_year_month(f_hi)});
    }

    // serialize
    std::ostringstream orgs_csv, acqs_csv, descs_csv;
    orgs_csv << "org_id,name,country,region,city,category_list,"
                "category_group_list,founded_on\n";
    descs_csv << "org_id,description\n";
    auto list_field = [](const char* prefix, const std::vector<std::size_t>& ids) {
        std::string joined;
        for (const std::size_t id : ids) {
            if (!joined.empty()) joined += ',';
            joined += tag(prefix, id);
        }
        return joined;
    };
    for (std::size_t i = 0; i < n; ++i) {
        const SynthOrg& org = orgs[i];
        const std::vector<std::string> row = {
            org.id,
            "Org " + std::to_string(i),
            tag("country", org.country),
            tag("region", org.region),
            tag("city", org.city),
            list_field("sector", org.category_list),
            list_field("group", org.group_list),
            format_year_month(org.founded),
        };
        write_csv_row(orgs_csv, row);
        const std::vector<std::string> desc_row = {org.id, org.description};
        write_csv_row(descs_csv, desc_row);
        result.truth_primaries.push_back(
            {org.id, tag("sector", org.category), tag("group", org.group)});
    }
    for (const auto& org : defect_orgs) {
        // city left empty: fails the completeness rule, nothing else
        const std::vector<std::string> row = {
            org.id,
            "Bad " + org.id,
            tag("country", org.country),
            tag("region", org.region),
            "",
            tag("sector", std::size_t{0}),
            tag("group", std::size_t{0}),
            format_year_month(org.founded),
        };
        write_csv_row(orgs_csv, row);
        const std::vector<std::string> desc_row = {org.id, "placeholder text"};
        write_csv_row(descs_csv, desc_row);
    }

    acqs_csv << "acquirer_id,acquiree_id,acquisition_type,acquired_on\n";
    for (const auto& row : event_rows) {
        const std::vector<std::string> fields = {row.acquirer, row.acquiree,
                                                 row.type, row.date};
        write_csv_row(acqs_csv, fields);
    }

    result.organizations_csv = std::move(orgs_csv).str();
    result.acquisitions_csv = std::move(acqs_csv).str();
    result.descriptions_csv = std::move(descs_csv).str();
    return result;
}

void write_synth_files(const SynthResult& result, const std::string& dir) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    write_text_file((fs::path(dir) / "organizations.csv").string(),
                    result.organizations_csv);
    write_text_file((fs::path(dir) / "acquisitions.csv").string(),
                    result.acquisitions_csv);
    write_text_file((fs::path(dir) / "descriptions.csv").string(),
                    result.descriptions_csv);
}

}  // namespace acqgraph
