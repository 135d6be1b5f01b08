#include "acqgraph/temporal.hpp"

#include <algorithm>
#include <sstream>

#include "acqgraph/builders.hpp"
#include "acqgraph/csv.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/metrics.hpp"
#include "acqgraph/parallel.hpp"

namespace acqgraph {

SnapshotSeries snapshot_series(const std::vector<OrgRecord>& orgs,
                               const std::vector<AcquisitionEvent>& events,
                               MonthIndex from, MonthIndex to,
                               std::optional<int> window) {
    if (from > to) throw DataError("snapshot range is reversed");
    if (window && *window < 1) throw DataError("window must be >= 1 month");

    SnapshotSeries series;
    series.start_month = from;
    const std::size_t n_points = static_cast<std::size_t>(to - from) + 1;
    series.points.resize(n_points);

    for_blocks_ordered(
        n_points, 4,
        [&](std::size_t lo, std::size_t hi) {
            std::vector<SnapshotPoint> block;
            block.reserve(hi - lo);
            for (std::size_t i = lo; i < hi; ++i) {
                const MonthIndex month = from + static_cast<MonthIndex>(i);
                // The slice keeps the input order so the snapshot graph is
                // built exactly like a from-scratch rebuild on the filtered
                // event list.
                std::vector<AcquisitionEvent> slice;
                for (const auto& e : events) {
                    if (e.date_month > month) continue;
                    if (window && e.date_month <= month - *window) continue;
                    slice.push_back(e);
                }
                const AttributedGraph g = build_acquisition(orgs, slice);

                SnapshotPoint point;
                point.month = month;
                point.n_nodes = g.node_count();
                point.n_edges = g.edge_count();
                auto compute = [](auto&& fn) -> std::optional<double> {
                    try {
                        return fn();
                    } catch (const UndefinedValueError&) {
                        return std::nullopt;
                    }
                };
                point.density = compute([&] { return density(g); });
                point.avg_clustering = compute([&] { return avg_clustering(g); });
                point.avg_shortest_path =
                    compute([&] { return avg_shortest_path(g); });
                point.n_wcc = weak_components(g).count();
                block.push_back(std::move(point));
            }
            return block;
        },
        [&, index = std::size_t{0}](std::vector<SnapshotPoint>&& block) mutable {
            for (auto& point : block) series.points[index++] = std::move(point);
        });

    return series;
}

std::string series_to_csv(const SnapshotSeries& series) {
    std::ostringstream out;
    out << "month,n_nodes,n_edges,density,avg_clustering,avg_shortest_path,"
           "n_wcc\n";
    auto cell = [](const std::optional<double>& value) {
        return value ? format_double(*value) : std::string();
    };
    for (const auto& point : series.points) {
        out << format_year_month(point.month) << ',' << point.n_nodes << ','
            << point.n_edges << ',' << cell(point.density) << ','
            << cell(point.avg_clustering) << ','
            << cell(point.avg_shortest_path) << ',' << point.n_wcc << '\n';
    }
    return std::move(out).str();
}

}  // namespace acqgraph
