#include "acqgraph/report.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "acqgraph/builders.hpp"
#include "acqgraph/csv.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/rng.hpp"

namespace acqgraph {

std::string graph_content_hash(const AttributedGraph& g) {
    struct KeyEdge {
        const std::string* source;
        const std::string* target;
        Weight weight;
    };
    std::vector<KeyEdge> edges;
    edges.reserve(g.edge_count());
    for (const auto& e : g.edges()) {
        edges.push_back({&g.key_of(e.source), &g.key_of(e.target), e.weight});
    }
    std::sort(edges.begin(), edges.end(), [](const KeyEdge& a, const KeyEdge& b) {
        if (*a.source != *b.source) return *a.source < *b.source;
        if (*a.target != *b.target) return *a.target < *b.target;
        return a.weight < b.weight;
    });
    std::uint64_t h = 1469598103934665603ULL;
    auto mix_byte = [&h](unsigned char byte) {
        h ^= byte;
        h *= 1099511628211ULL;
    };
    auto mix = [&](const std::string& s) {
        for (const unsigned char c : s) mix_byte(c);
        mix_byte(0x1f);
    };
    mix_byte(g.directed() ? 1 : 0);
    for (const auto& e : edges) {
        mix(*e.source);
        mix(*e.target);
        mix(std::to_string(e.weight));
        mix_byte(0x1e);
    }
    char buf[20];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(h));
    return buf;
}

namespace {

const std::vector<std::pair<std::string, std::string>> kAssortativityFeatures = {
    {"country", "Country"},
    {"region", "Region"},
    {"city", "City"},
    {"category_group", "Category group"},
    {"category", "Category"},
    {"founded_month", "Founding date (year-month)"},
    {"degree", "Node degree"},
};

}  // namespace

AnalysisBundle analyze(NetworkKind kind, const std::vector<OrgRecord>& orgs,
                       const std::vector<AcquisitionEvent>& events,
                       const AnalyzeOptions& options) {
    AnalysisBundle bundle;
    bundle.kind = kind;
    const AttributedGraph g = build_network(kind, orgs, events);
    bundle.graph_hash = graph_content_hash(g);
    bundle.structure = structure_record(g);

    auto guard = [&bundle](const std::string& section, auto&& fn) {
        try {
            fn();
        } catch (const std::exception& e) {
            bundle.section_errors[section] = e.what();
        }
    };

    if (options.with_baseline) {
        guard("baseline", [&] {
            bundle.baseline = compare(g, options.baseline_samples,
                                      derive_seed(options.seed, "baseline"));
        });
    }
    if (options.with_centrality) {
        guard("centrality", [&] {
            std::vector<CentralityVector> vectors;
            vectors.push_back(degree_centrality(g));
            vectors.push_back(weighted_degree(g));
            vectors.push_back(betweenness(g));
            vectors.push_back(closeness(g));
            auto solve = [&](const char* name, auto&& fn) {
                try {
                    vectors.push_back(fn());
                } catch (const std::exception& e) {
                    bundle.section_errors[std::string("centrality.") + name] =
                        e.what();
                }
            };
            solve("eigenvector", [&] {
                return eigenvector(g, options.tolerance, options.max_iterations);
            });
            solve("pagerank", [&] {
                return pagerank(g, options.alpha, options.tolerance,
                                options.max_iterations);
            });
            solve("authority", [&] {
                return hits(g, options.tolerance, options.max_iterations)
                    .authority;
            });
            bundle.centralities = rank_table(vectors, options.top_k);
        });
    }
    if (options.with_assortativity) {
        auto& map = bundle.assortativity.emplace();
        for (const auto& [feature, label] : kAssortativityFeatures) {
            try {
                double value = 0.0;
                if (feature == "degree") {
                    value = assortativity_degree(g);
                } else if (feature == "founded_month") {
                    value = assortativity_numeric(g, feature);
                } else {
                    value = assortativity_categorical(g, feature);
                }
                map[feature] = value;
            } catch (const UndefinedValueError&) {
                map[feature] = std::nullopt;
            } catch (const std::exception& e) {
                map[feature] = std::nullopt;
                bundle.section_errors["assortativity." + feature] = e.what();
            }
        }
    }
    if (options.with_communities) {
        guard("communities", [&] {
            const Partition partition =
                louvain(g, options.resolution, derive_seed(options.seed, "louvain"));
            CommunitiesSection section;
            std::map<int, bool> ids;
            for (const auto& [key, c] : partition.assignment) ids[c] = true;
            section.n_communities = ids.size();
            section.modularity = partition.modularity;
            section.summaries = summarize_communities(
                g, partition, {"country", "region", "category", "category_group"});
            bundle.communities = std::move(section);
        });
    }
    if (options.with_ergm) {
        guard("ergm", [&] {
            const std::vector<ErgmTerm> terms =
                options.ergm_terms.empty() ? default_ergm_terms()
                                           : options.ergm_terms;
            const ErgmSampling sampling =
                options.ergm_case_control_ratio
                    ? ErgmSampling::case_control(*options.ergm_case_control_ratio,
                                                 derive_seed(options.seed, "ergm"))
                    : ErgmSampling::exact();
            const DyadDesign design = build_design(g, terms, sampling);
            bundle.ergm = summarize(fit(design), design);
        });
    }
    return bundle;
}

std::optional<RenderFormat> render_format_from_string(std::string_view name) {
    if (name == "json") return RenderFormat::Json;
    if (name == "csv") return RenderFormat::Csv;
    if (name == "markdown") return RenderFormat::Markdown;
    return std::nullopt;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

nlohmann::json rank_table_to_json(const RankTable& table) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& [metric, entries] : table.tables) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& entry : entries) {
            rows.push_back({{"node", entry.key},
                            {"value", entry.value},
                            {"rank", entry.rank}});
        }
        arr.push_back({{"metric", to_string(metric)}, {"top", rows}});
    }
    return arr;
}

RankTable rank_table_from_json(const nlohmann::json& arr) {
    RankTable table;
    for (const auto& item : arr) {
        std::vector<RankedEntry> entries;
        for (const auto& row : item.at("top")) {
            entries.push_back({row.at("node").get<std::string>(),
                               row.at("value").get<double>(),
                               row.at("rank").get<int>()});
        }
        table.tables.emplace_back(
            *centrality_metric_from_string(item.at("metric").get<std::string>()),
            std::move(entries));
    }
    return table;
}

}  // namespace

nlohmann::json bundle_to_json(const AnalysisBundle& bundle) {
    nlohmann::json j;
    j["network"] = to_string(bundle.kind);
    j["graph_hash"] = bundle.graph_hash;
    j["structure"] = to_json(bundle.structure);
    j["structure"]["graph_hash"] = bundle.graph_hash;
    if (bundle.baseline) {
        j["baseline"] = to_json(*bundle.baseline);
        j["baseline"]["graph_hash"] = bundle.graph_hash;
    }
    if (bundle.centralities) {
        j["centrality"] = {{"graph_hash", bundle.graph_hash},
                           {"tables", rank_table_to_json(*bundle.centralities)}};
    }
    if (bundle.assortativity) {
        nlohmann::json section;
        for (const auto& [feature, value] : *bundle.assortativity) {
            section[feature] = opt_json(value);
        }
        section["graph_hash"] = bundle.graph_hash;
        j["assortativity"] = section;
    }
    if (bundle.communities) {
        nlohmann::json summaries = nlohmann::json::array();
        for (const auto& s : bundle.communities->summaries) {
            nlohmann::json modal;
            for (const auto& [attr, pair] : s.modal) {
                modal[attr] = {{"value", pair.first}, {"fraction", pair.second}};
            }
            summaries.push_back(
                {{"id", s.id}, {"size", s.size}, {"modal", modal}});
        }
        j["communities"] = {{"graph_hash", bundle.graph_hash},
                            {"n_communities", bundle.communities->n_communities},
                            {"modularity", bundle.communities->modularity},
                            {"summaries", summaries}};
    }
    if (bundle.ergm) {
        j["ergm"] = to_json(*bundle.ergm);
        j["ergm"]["graph_hash"] = bundle.graph_hash;
    }
    if (!bundle.section_errors.empty()) {
        j["section_errors"] = bundle.section_errors;
    }
    return j;
}

AnalysisBundle bundle_from_json(const nlohmann::json& j) {
    AnalysisBundle bundle;
    bundle.kind = *network_kind_from_string(j.at("network").get<std::string>());
    bundle.graph_hash = j.at("graph_hash").get<std::string>();
    bundle.structure = structure_record_from_json(j.at("structure"));
    if (j.contains("baseline")) {
        const auto& b = j.at("baseline");
        ComparisonReport report;
        report.spec.n = b.at("spec").at("n").get<std::size_t>();
        report.spec.p = b.at("spec").at("p").get<double>();
        report.spec.directed = b.at("spec").at("directed").get<bool>();
        report.n_samples = b.at("n_samples").get<int>();
        report.seed = b.at("seed").get<std::uint64_t>();
        for (const auto& sample : b.at("samples")) {
            report.samples.push_back(structure_record_from_json(sample));
        }
        auto opt = [](const nlohmann::json& v) -> std::optional<double> {
            if (v.is_null()) return std::nullopt;
            return v.get<double>();
        };
        const auto& real = b.at("real");
        report.real.density = opt(real.at("Density"));
        report.real.transitivity = opt(real.at("Transitivity"));
        report.real.avg_clustering = opt(real.at("Average clustering coefficient"));
        report.real.avg_shortest_path =
            opt(real.at("Average shortest path length"));
        report.real.n_wcc = static_cast<std::size_t>(
            real.at("Number of weakly connected components").get<double>());
        if (real.contains("Largest strongly connected component size")) {
            report.real.largest_wcc_size = static_cast<std::size_t>(
                real.at("Largest weakly connected component size").get<double>());
            report.real.largest_scc_size =
                static_cast<std::size_t>(real
                    .at("Largest strongly connected component size")
                    .get<double>());
        } else {
            report.real.largest_wcc_size = static_cast<std::size_t>(
                real.at("Largest connected component size").get<double>());
        }
        report.real.n_nodes = report.spec.n;
        const auto& mean = b.at("baseline");
        report.baseline_mean.density = opt(mean.at("Density"));
        report.baseline_mean.transitivity = opt(mean.at("Transitivity"));
        report.baseline_mean.avg_clustering =
            opt(mean.at("Average clustering coefficient"));
        report.baseline_mean.avg_shortest_path =
            opt(mean.at("Average shortest path length"));
        report.baseline_mean.n_wcc =
            opt(mean.at("Number of weakly connected components"));
        if (mean.contains("Largest strongly connected component size")) {
            report.baseline_mean.largest_wcc_size =
                opt(mean.at("Largest weakly connected component size"));
            report.baseline_mean.largest_scc_size =
                opt(mean.at("Largest strongly connected component size"));
        } else {
            report.baseline_mean.largest_wcc_size =
                opt(mean.at("Largest connected component size"));
        }
        bundle.baseline = std::move(report);
    }
    if (j.contains("centrality")) {
        bundle.centralities = rank_table_from_json(j.at("centrality").at("tables"));
    }
    if (j.contains("assortativity")) {
        auto& map = bundle.assortativity.emplace();
        for (const auto& [key, value] : j.at("assortativity").items()) {
            if (key == "graph_hash") continue;
            if (value.is_null()) {
                map[key] = std::nullopt;
            } else {
                map[key] = value.get<double>();
            }
        }
    }
    if (j.contains("communities")) {
        const auto& c = j.at("communities");
        CommunitiesSection section;
        section.n_communities = c.at("n_communities").get<std::size_t>();
        section.modularity = c.at("modularity").get<double>();
        for (const auto& s : c.at("summaries")) {
            CommunitySummary summary;
            summary.id = s.at("id").get<int>();
            summary.size = s.at("size").get<std::size_t>();
            for (const auto& [attr, modal] : s.at("modal").items()) {
                summary.modal[attr] = {modal.at("value").get<std::string>(),
                                       modal.at("fraction").get<double>()};
            }
            section.summaries.push_back(std::move(summary));
        }
        bundle.communities = std::move(section);
    }
    if (j.contains("ergm")) {
        const auto& e = j.at("ergm");
        ErgmReport report;
        report.log_likelihood = e.at("log_likelihood").get<double>();
        report.aic = e.at("AIC").get<double>();
        report.converged = e.at("converged").get<bool>();
        report.iterations = e.at("iterations").get<int>();
        for (const auto& t : e.at("terms")) {
            TermSummary summary;
            summary.term = t.at("term").get<std::string>();
            summary.label = t.at("label").get<std::string>();
            summary.estimate = t.at("estimate").get<double>();
            summary.std_err = t.at("std_err").get<double>();
            summary.z = t.at("z").get<double>();
            summary.p_value = t.at("p_value").get<double>();
            summary.stars = t.at("stars").get<std::string>();
            report.terms.push_back(std::move(summary));
        }
        bundle.ergm = std::move(report);
    }
    if (j.contains("section_errors")) {
        bundle.section_errors =
            j.at("section_errors").get<std::map<std::string, std::string>>();
    }
    return bundle;
}

namespace {

std::string fmt_opt(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string("undefined");
}

struct LongRow {
    std::string section, row, column, value;
};

std::vector<LongRow> long_rows(const AnalysisBundle& bundle) {
    std::vector<LongRow> rows;
    auto structure_rows = [&rows](const std::string& section,
                                  const std::string& column,
                                  const StructureRecord& r) {
        rows.push_back({section, "Density", column, fmt_opt(r.density)});
        rows.push_back({section, "Transitivity", column, fmt_opt(r.transitivity)});
        rows.push_back({section, "Average clustering coefficient", column,
                        fmt_opt(r.avg_clustering)});
        rows.push_back({section, "Average shortest path length", column,
                        fmt_opt(r.avg_shortest_path)});
        if (r.largest_scc_size) {
            rows.push_back({section, "Largest weakly connected component size",
                            column, std::to_string(r.largest_wcc_size)});
            rows.push_back({section, "Largest strongly connected component size",
                            column, std::to_string(*r.largest_scc_size)});
        } else {
            rows.push_back({section, "Largest connected component size", column,
                            std::to_string(r.largest_wcc_size)});
        }
        rows.push_back({section, "Number of weakly connected components", column,
                        std::to_string(r.n_wcc)});
    };
    structure_rows("structure", "value", bundle.structure);
    if (bundle.baseline) {
        const auto& b = *bundle.baseline;
        structure_rows("baseline", to_string(bundle.kind) + " network", b.real);
        auto opt_row = [&rows](const std::string& name,
                               const std::optional<double>& v) {
            rows.push_back({"baseline", name, "Baseline model", fmt_opt(v)});
        };
        opt_row("Density", b.baseline_mean.density);
        opt_row("Transitivity", b.baseline_mean.transitivity);
        opt_row("Average clustering coefficient", b.baseline_mean.avg_clustering);
        opt_row("Average shortest path length",
                b.baseline_mean.avg_shortest_path);
        if (b.real.largest_scc_size) {
            opt_row("Largest weakly connected component size",
                    b.baseline_mean.largest_wcc_size);
            opt_row("Largest strongly connected component size",
                    b.baseline_mean.largest_scc_size);
        } else {
            opt_row("Largest connected component size",
                    b.baseline_mean.largest_wcc_size);
        }
        opt_row("Number of weakly connected components", b.baseline_mean.n_wcc);
    }
    if (bundle.centralities) {
        for (const auto& [metric, entries] : bundle.centralities->tables) {
            for (const auto& entry : entries) {
                rows.push_back({"centrality." + to_string(metric),
                                std::to_string(entry.rank), entry.key,
                                format_double(entry.value)});
            }
        }
    }
    if (bundle.assortativity) {
        for (const auto& [feature, label] : kAssortativityFeatures) {
            const auto it = bundle.assortativity->find(feature);
            if (it == bundle.assortativity->end()) continue;
            rows.push_back(
                {"assortativity", label, "coefficient", fmt_opt(it->second)});
        }
    }
    if (bundle.communities) {
        rows.push_back({"communities", "modularity", "value",
                        format_double(bundle.communities->modularity)});
        rows.push_back({"communities", "count", "value",
                        std::to_string(bundle.communities->n_communities)});
        for (const auto& s : bundle.communities->summaries) {
            for (const auto& [attr, modal] : s.modal) {
                rows.push_back({"communities", std::to_string(s.id), attr,
                                modal.first + " (" +
                                    format_double(modal.second * 100.0) + "%)"});
            }
        }
    }
    if (bundle.ergm) {
        for (const auto& term : bundle.ergm->terms) {
            rows.push_back({"ergm", term.label, "Estimate (standard error)",
                            format_double(term.estimate) + term.stars + " (" +
                                format_double(term.std_err) + ")"});
        }
        rows.push_back({"ergm", "AIC", "value", format_double(bundle.ergm->aic)});
    }
    return rows;
}

std::string render_csv(const AnalysisBundle& bundle) {
    std::ostringstream out;
    out << "section,row,column,value\n";
    for (const auto& row : long_rows(bundle)) {
        const std::vector<std::string> fields = {row.section, row.row,
                                                 row.column, row.value};
        write_csv_row(out, fields);
    }
    return std::move(out).str();
}

std::string render_markdown(const AnalysisBundle& bundle) {
    std::ostringstream out;
    out << "# Analysis: " << to_string(bundle.kind) << " network\n\n";
    out << "Graph hash: `" << bundle.graph_hash << "`\n\n";

    out << "## Structural properties\n\n";
    const bool with_baseline = bundle.baseline.has_value();
    out << "| Property | " << to_string(bundle.kind) << " network |";
    if (with_baseline) out << " Baseline model |";
    out << "\n|---|---|";
    if (with_baseline) out << "---|";
    out << "\n";
    auto structure_line = [&](const std::string& name, const std::string& real,
                              const std::string& base) {
        out << "| " << name << " | " << real << " |";
        if (with_baseline) out << " " << base << " |";
        out << "\n";
    };
    const StructureRecord& r = bundle.structure;
    const StructureMean* m =
        with_baseline ? &bundle.baseline->baseline_mean : nullptr;
    structure_line("Density", fmt_opt(r.density), m ? fmt_opt(m->density) : "");
    structure_line("Transitivity", fmt_opt(r.transitivity),
                   m ? fmt_opt(m->transitivity) : "");
    structure_line("Average clustering coefficient", fmt_opt(r.avg_clustering),
                   m ? fmt_opt(m->avg_clustering) : "");
    structure_line("Average shortest path length", fmt_opt(r.avg_shortest_path),
                   m ? fmt_opt(m->avg_shortest_path) : "");
    if (r.largest_scc_size) {
        structure_line("Largest weakly connected component size",
                       std::to_string(r.largest_wcc_size),
                       m ? fmt_opt(m->largest_wcc_size) : "");
        structure_line("Largest strongly connected component size",
                       std::to_string(*r.largest_scc_size),
                       m ? fmt_opt(m->largest_scc_size) : "");
    } else {
        structure_line("Largest connected component size",
                       std::to_string(r.largest_wcc_size),
                       m ? fmt_opt(m->largest_wcc_size) : "");
    }
    structure_line("Number of weakly connected components",
                   std::to_string(r.n_wcc), m ? fmt_opt(m->n_wcc) : "");
    out << "\n";

    if (bundle.centralities) {
        out << "## Most central nodes\n\n";
        out << "| Centrality metric | Most central nodes |\n|---|---|\n";
        for (const auto& [metric, entries] : bundle.centralities->tables) {
            out << "| " << to_string(metric) << " |";
            for (std::size_t i = 0; i < entries.size(); ++i) {
                if (i) out << ",";
                out << " " << entries[i].key;
            }
            out << " |\n";
        }
        out << "\n";
    }
    if (bundle.assortativity) {
        out << "## Assortativity coefficients\n\n";
        out << "| Feature | Assortativity coefficient |\n|---|---|\n";
        for (const auto& [feature, label] : kAssortativityFeatures) {
            const auto it = bundle.assortativity->find(feature);
            if (it == bundle.assortativity->end()) continue;
            out << "| " << label << " | " << fmt_opt(it->second) << " |\n";
        }
        out << "\n";
    }
    if (bundle.communities) {
        out << "## Communities\n\n";
        out << "Modularity " << format_double(bundle.communities->modularity)
            << " over " << bundle.communities->n_communities
            << " communities.\n\n";
        out << "| Community | Attribute | Modal value | Portion |\n"
               "|---|---|---|---|\n";
        for (const auto& s : bundle.communities->summaries) {
            for (const auto& [attr, modal] : s.modal) {
                char pct[32];
                std::snprintf(pct, sizeof pct, "%.2f%%", modal.second * 100.0);
                out << "| " << s.id << " | " << attr << " | " << modal.first
                    << " | " << pct << " |\n";
            }
        }
        out << "\n";
    }
    if (bundle.ergm) {
        out << "## ERGM estimates\n\n";
        out << "| Variable | Estimate (standard error) |\n|---|---|\n";
        for (const auto& term : bundle.ergm->terms) {
            out << "| " << term.label << " | " << format_double(term.estimate)
                << term.stars << " (" << format_double(term.std_err)
                << ") |\n";
        }
        out << "| AIC | " << format_double(bundle.ergm->aic) << " |\n";
        out << "\n* p < 0.05, ** p < 0.01, *** p < 0.001\n\n";
    }
    if (!bundle.section_errors.empty()) {
        out << "## Section errors\n\n";
        for (const auto& [section, message] : bundle.section_errors) {
            out << "- `" << section << "`: " << message << "\n";
        }
        out << "\n";
    }
    return std::move(out).str();
}

}  // namespace

std::string render(const AnalysisBundle& bundle, RenderFormat format) {
    switch (format) {
        case RenderFormat::Json: return bundle_to_json(bundle).dump(2) + "\n";
        case RenderFormat::Csv: return render_csv(bundle);
        case RenderFormat::Markdown: return render_markdown(bundle);
    }
    return {};
}

}  // namespace acqgraph
