#include "acqgraph/baseline.hpp"

#include <cstdio>

#include "acqgraph/errors.hpp"
#include "acqgraph/parallel.hpp"
#include "acqgraph/rng.hpp"

namespace acqgraph {

BaselineSpec matched_spec(const AttributedGraph& g) {
    BaselineSpec spec;
    spec.n = g.node_count();
    spec.p = density(g);
    spec.directed = g.directed();
    return spec;
}

AttributedGraph generate_er(const BaselineSpec& spec) {
    if (spec.p < 0.0 || spec.p > 1.0) {
        throw DataError("edge probability must lie in [0, 1]");
    }
    AttributedGraph g(spec.directed);
    char key[24];
    for (std::size_t i = 0; i < spec.n; ++i) {
        std::snprintf(key, sizeof key, "er%08zu", i);
        g.add_node(key);
    }
    SplitMix64 rng(derive_seed(spec.seed, "er-edges"));
    for (std::size_t u = 0; u < spec.n; ++u) {
        const std::size_t begin = spec.directed ? 0 : u + 1;
        for (std::size_t v = begin; v < spec.n; ++v) {
            if (u == v) continue;
            if (rng.uniform() < spec.p) {
                g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), 1);
            }
        }
    }
    return g;
}

ComparisonReport compare(const AttributedGraph& g, int n_samples,
                         std::uint64_t seed) {
    if (n_samples < 1) throw DataError("compare requires n_samples >= 1");
    ComparisonReport report;
    report.real = structure_record(g);
    report.spec = matched_spec(g);
    report.n_samples = n_samples;
    report.seed = seed;

    report.samples.reserve(static_cast<std::size_t>(n_samples));
    for_blocks_ordered(
        static_cast<std::size_t>(n_samples), 1,
        [&](std::size_t lo, std::size_t hi) {
            std::vector<StructureRecord> block;
            for (std::size_t i = lo; i < hi; ++i) {
                BaselineSpec sample_spec = report.spec;
                sample_spec.seed = derive_seed(seed, "er-sample", i);
                block.push_back(structure_record(generate_er(sample_spec)));
            }
            return block;
        },
        [&](std::vector<StructureRecord>&& block) {
            for (auto& record : block) report.samples.push_back(std::move(record));
        });

    auto mean_of = [&](auto&& get) -> std::optional<double> {
        double sum = 0.0;
        int defined = 0;
        for (const auto& sample : report.samples) {
            const std::optional<double> value = get(sample);
            if (value) {
                sum += *value;
                ++defined;
            }
        }
        if (defined == 0) return std::nullopt;
        return sum / defined;
    };
    report.baseline_mean.density =
        mean_of([](const StructureRecord& r) { return r.density; });
    report.baseline_mean.transitivity =
        mean_of([](const StructureRecord& r) { return r.transitivity; });
    report.baseline_mean.avg_clustering =
        mean_of([](const StructureRecord& r) { return r.avg_clustering; });
    report.baseline_mean.avg_shortest_path =
        mean_of([](const StructureRecord& r) { return r.avg_shortest_path; });
    report.baseline_mean.largest_wcc_size =
        mean_of([](const StructureRecord& r) -> std::optional<double> {
            return static_cast<double>(r.largest_wcc_size);
        });
    report.baseline_mean.n_wcc =
        mean_of([](const StructureRecord& r) -> std::optional<double> {
            return static_cast<double>(r.n_wcc);
        });
    report.baseline_mean.largest_scc_size =
        mean_of([](const StructureRecord& r) -> std::optional<double> {
            if (!r.largest_scc_size) return std::nullopt;
            return static_cast<double>(*r.largest_scc_size);
        });
    return report;
}

namespace {

nlohmann::json opt_json(const std::optional<double>& value) {
    if (value) return *value;
    return nullptr;
}

}  // namespace

nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json baseline{
        {"Density", opt_json(report.baseline_mean.density)},
        {"Transitivity", opt_json(report.baseline_mean.transitivity)},
        {"Average clustering coefficient",
         opt_json(report.baseline_mean.avg_clustering)},
        {"Average shortest path length",
         opt_json(report.baseline_mean.avg_shortest_path)},
        {"Number of weakly connected components",
         opt_json(report.baseline_mean.n_wcc)},
    };
    nlohmann::json real{
        {"Density", opt_json(report.real.density)},
        {"Transitivity", opt_json(report.real.transitivity)},
        {"Average clustering coefficient", opt_json(report.real.avg_clustering)},
        {"Average shortest path length", opt_json(report.real.avg_shortest_path)},
        {"Number of weakly connected components",
         static_cast<double>(report.real.n_wcc)},
    };
    if (report.real.largest_scc_size) {
        real["Largest weakly connected component size"] =
            static_cast<double>(report.real.largest_wcc_size);
        real["Largest strongly connected component size"] =
            static_cast<double>(*report.real.largest_scc_size);
        baseline["Largest weakly connected component size"] =
            opt_json(report.baseline_mean.largest_wcc_size);
        baseline["Largest strongly connected component size"] =
            opt_json(report.baseline_mean.largest_scc_size);
    } else {
        real["Largest connected component size"] =
            static_cast<double>(report.real.largest_wcc_size);
        baseline["Largest connected component size"] =
            opt_json(report.baseline_mean.largest_wcc_size);
    }
    return nlohmann::json{
        {"real", real},
        {"baseline", baseline},
        {"samples", [&] {
             nlohmann::json arr = nlohmann::json::array();
             for (const auto& sample : report.samples) arr.push_back(to_json(sample));
             return arr;
         }()},
        {"spec",
         {{"n", report.spec.n},
          {"p", report.spec.p},
          {"directed", report.spec.directed}}},
        {"n_samples", report.n_samples},
        {"seed", report.seed},
    };
}

}  // namespace acqgraph
