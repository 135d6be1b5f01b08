#pragma once

#include <optional>
#include <string>
#include <vector>

#include "acqgraph/records.hpp"

namespace acqgraph {

struct SnapshotPoint {
    MonthIndex month = 0;
    std::size_t n_nodes = 0;
    std::size_t n_edges = 0;
    std::optional<double> density;
    std::optional<double> avg_clustering;
    std::optional<double> avg_shortest_path;
    std::size_t n_wcc = 0;

    bool operator==(const SnapshotPoint&) const = default;
};

struct SnapshotSeries {
    MonthIndex start_month = 0;
    std::vector<SnapshotPoint> points;  // one per month, consecutive

    bool operator==(const SnapshotSeries&) const = default;
};

// One snapshot per month in [from, to]. Default is cumulative: the network at
// month t is built from every event dated <= t, so metrics at the final month
// equal the whole-dataset metrics. A window of W months restricts events to
// (t-W, t]. Metrics that are undefined on the snapshot (empty graph, tiny
// component) come back as null.
SnapshotSeries snapshot_series(const std::vector<OrgRecord>& orgs,
                               const std::vector<AcquisitionEvent>& events,
                               MonthIndex from, MonthIndex to,
                               std::optional<int> window = std::nullopt);

// CSV with an ISO year-month column; nulls are empty cells, doubles printed
// with shortest round-trip precision.
std::string series_to_csv(const SnapshotSeries& series);

}  // namespace acqgraph
