#include <doctest.h>

#include <cmath>

#include "acqgraph/builders.hpp"
#include "acqgraph/errors.hpp"
#include "acqgraph/metrics.hpp"
#include "acqgraph/rng.hpp"
#include "oracles.hpp"

using namespace acqgraph;

namespace {

AttributedGraph complete_graph(std::size_t n, bool directed) {
    AttributedGraph g(directed);
    for (std::size_t i = 0; i < n; ++i) g.add_node("k" + std::to_string(i));
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = directed ? 0 : u + 1; v < n; ++v) {
            if (u != v) g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), 1);
        }
    }
    return g;
}

AttributedGraph path_graph(std::size_t n) {
    AttributedGraph g(false);
    for (std::size_t i = 0; i < n; ++i) g.add_node("p" + std::to_string(i));
    for (std::size_t i = 0; i + 1 < n; ++i) {
        g.add_edge(static_cast<NodeId>(i), static_cast<NodeId>(i + 1), 1);
    }
    return g;
}

}  // namespace

TEST_SUITE_BEGIN("metrics");

TEST_CASE("density basics") {
    CHECK(density(complete_graph(3, true)) == 1.0);

    AttributedGraph edgeless(false);
    for (int i = 0; i < 5; ++i) edgeless.add_node("n" + std::to_string(i));
    CHECK(density(edgeless) == 0.0);

    AttributedGraph g(true);
    g.add_edge(g.add_node("a"), g.add_node("b"), 1);
    g.add_edge(g.require("a"), g.add_node("c"), 1);
    g.add_edge(g.require("b"), g.add_node("d"), 1);
    CHECK(density(g) == doctest::Approx(0.25).epsilon(1e-15));  // 3 / 12
}

TEST_CASE("density excludes self-loops on both sides") {
    AttributedGraph g(true, true);
    const NodeId a = g.add_node("a");
    const NodeId b = g.add_node("b");
    g.add_edge(a, b, 1);
    g.add_edge(a, a, 4);
    CHECK(density(g) == doctest::Approx(0.5).epsilon(1e-15));  // 1 of 2 dyads
}

TEST_CASE("density undefined below two nodes") {
    AttributedGraph g(false);
    g.add_node("only");
    CHECK_THROWS_AS(density(g), UndefinedValueError);
}

TEST_CASE("transitivity on canonical fixtures") {
    CHECK(transitivity(complete_graph(3, false)) == 1.0);
    CHECK(transitivity(path_graph(3)) == 0.0);

    // K4 minus one edge: 2 triangles, ratio from brute-force triple count
    AttributedGraph g = complete_graph(4, false);
    const auto edges = g.edges();
    AttributedGraph h(false);
    for (NodeId id = 0; id < g.node_count(); ++id) h.add_node(g.key_of(id));
    for (std::size_t i = 1; i < edges.size(); ++i) {
        h.add_edge(edges[i].source, edges[i].target, edges[i].weight);
    }
    CHECK(transitivity(h) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(transitivity(h) ==
          doctest::Approx(oracle::transitivity(h)).epsilon(1e-12));
}

TEST_CASE("avg clustering on canonical fixtures") {
    CHECK(avg_clustering(complete_graph(3, false)) == 1.0);

    AttributedGraph star(false);
    const NodeId hub = star.add_node("hub");
    for (int i = 0; i < 4; ++i) {
        star.add_edge(hub, star.add_node("l" + std::to_string(i)), 1);
    }
    CHECK(avg_clustering(star) == 0.0);

    // triangle plus pendant: (1 + 1 + 1/3 + 0) / 4
    AttributedGraph g(false);
    const NodeId a = g.add_node("a");
    const NodeId b = g.add_node("b");
    const NodeId c = g.add_node("c");
    const NodeId d = g.add_node("d");
    g.add_edge(a, b, 1);
    g.add_edge(b, c, 1);
    g.add_edge(a, c, 1);
    g.add_edge(c, d, 1);
    CHECK(avg_clustering(g) ==
          doctest::Approx((1.0 + 1.0 + 1.0 / 3.0) / 4.0).epsilon(1e-12));
}

TEST_CASE("avg shortest path on canonical fixtures") {
    CHECK(avg_shortest_path(path_graph(3)) ==
          doctest::Approx(4.0 / 3.0).epsilon(1e-12));
    CHECK(avg_shortest_path(complete_graph(3, false)) == 1.0);
    CHECK(avg_shortest_path(path_graph(2)) == 1.0);
}

TEST_CASE("avg shortest path undefined on tiny components") {
    AttributedGraph g(false);
    g.add_node("a");
    g.add_node("b");
    CHECK_THROWS_AS(avg_shortest_path(g), UndefinedValueError);
}

TEST_CASE("components on canonical fixtures") {
    // 2-cycle plus isolated node
    AttributedGraph g(true);
    const NodeId a = g.add_node("a");
    const NodeId b = g.add_node("b");
    g.add_node("c");
    g.add_edge(a, b, 1);
    g.add_edge(b, a, 1);
    const auto weak = weak_components(g);
    const auto strong = strong_components(g);
    CHECK(weak.count() == 2);
    CHECK(weak.largest() == 2);
    CHECK(strong.largest() == 2);

    // DAG path
    AttributedGraph dag(true);
    dag.add_edge(dag.add_node("a"), dag.add_node("b"), 1);
    dag.add_edge(dag.require("b"), dag.add_node("c"), 1);
    CHECK(weak_components(dag).largest() == 3);
    CHECK(strong_components(dag).largest() == 1);

    // two disjoint directed triangles
    AttributedGraph two(true);
    for (const char* prefix : {"x", "y"}) {
        const NodeId n0 = two.add_node(std::string(prefix) + "0");
        const NodeId n1 = two.add_node(std::string(prefix) + "1");
        const NodeId n2 = two.add_node(std::string(prefix) + "2");
        two.add_edge(n0, n1, 1);
        two.add_edge(n1, n2, 1);
        two.add_edge(n2, n0, 1);
    }
    const auto scc = strong_components(two);
    CHECK(scc.count() == 2);
    CHECK(scc.sizes[0] == 3);
    CHECK(scc.sizes[1] == 3);
}

TEST_CASE("structure metrics match brute-force enumeration on random graphs") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        SplitMix64 mix(seed * 7 + 1);
        const std::size_t n = 8 + mix.below(40);
        const double p = 0.02 + 0.2 * mix.uniform();
        const bool directed = mix.below(2) == 1;
        const auto g = oracle::random_graph(seed + 100, n, p, directed, 3);

        CHECK(transitivity(g) ==
              doctest::Approx(oracle::transitivity(g)).epsilon(1e-12));
        CHECK(avg_clustering(g) ==
              doctest::Approx(oracle::avg_clustering(g)).epsilon(1e-12));
        CHECK(weak_components(g).largest() == oracle::largest_weak_component(g));
        CHECK(strong_components(g).largest() ==
              oracle::largest_strong_component(g));
        const auto expected_aspl = oracle::avg_shortest_path(g);
        if (expected_aspl) {
            CHECK(avg_shortest_path(g) ==
                  doctest::Approx(*expected_aspl).epsilon(1e-12));
        } else {
            CHECK_THROWS_AS(avg_shortest_path(g), UndefinedValueError);
        }
    }
}

TEST_CASE("metrics are invariant under node relabeling") {
    const auto g = oracle::random_graph(42, 25, 0.15, false, 2);
    // rebuild with reversed insertion order
    AttributedGraph permuted(false);
    for (NodeId id = g.node_count(); id-- > 0;) permuted.add_node(g.key_of(id));
    for (const auto& e : g.edges()) {
        permuted.add_edge(permuted.require(g.key_of(e.source)),
                          permuted.require(g.key_of(e.target)), e.weight);
    }
    CHECK(transitivity(permuted) == transitivity(g));
    CHECK(avg_clustering(permuted) ==
          doctest::Approx(avg_clustering(g)).epsilon(1e-12));
    CHECK(density(permuted) == density(g));
    CHECK(weak_components(permuted).count() == weak_components(g).count());
}

TEST_CASE("categorical assortativity of two monochrome cliques is one") {
    AttributedGraph g(false);
    for (const char* color : {"red", "blue"}) {
        std::vector<NodeId> ids;
        for (int i = 0; i < 4; ++i) {
            NodeAttributes attrs;
            attrs.labels["color"] = color;
            ids.push_back(g.add_node(std::string(color) + std::to_string(i), attrs));
        }
        for (std::size_t i = 0; i < ids.size(); ++i) {
            for (std::size_t j = i + 1; j < ids.size(); ++j) {
                g.add_edge(ids[i], ids[j], 1);
            }
        }
    }
    CHECK(assortativity_categorical(g, "color") == doctest::Approx(1.0));
}

TEST_CASE("categorical assortativity of complete bipartite two-coloring is minus one") {
    AttributedGraph g(false);
    std::vector<NodeId> left, right;
    for (int i = 0; i < 3; ++i) {
        NodeAttributes a;
        a.labels["side"] = "L";
        left.push_back(g.add_node("l" + std::to_string(i), a));
        NodeAttributes b;
        b.labels["side"] = "R";
        right.push_back(g.add_node("r" + std::to_string(i), b));
    }
    for (const NodeId u : left) {
        for (const NodeId v : right) g.add_edge(u, v, 1);
    }
    CHECK(assortativity_categorical(g, "side") == doctest::Approx(-1.0));
}

TEST_CASE("single same-label edge with a second label present is undefined") {
    AttributedGraph g(false);
    NodeAttributes a;
    a.labels["color"] = "red";
    const NodeId u = g.add_node("u", a);
    const NodeId v = g.add_node("v", a);
    NodeAttributes b;
    b.labels["color"] = "blue";
    g.add_node("w", b);
    g.add_edge(u, v, 1);
    // tr e = 1 and sum a_i b_i = 1: the formula degenerates to 0/0
    CHECK_THROWS_AS(assortativity_categorical(g, "color"), UndefinedValueError);
}

TEST_CASE("one label on every node is undefined") {
    AttributedGraph g(false);
    NodeAttributes a;
    a.labels["color"] = "red";
    g.add_edge(g.add_node("u", a), g.add_node("v", a), 1);
    CHECK_THROWS_AS(assortativity_categorical(g, "color"), UndefinedValueError);
}

TEST_CASE("missing attribute names the node") {
    AttributedGraph g(false);
    NodeAttributes a;
    a.labels["color"] = "red";
    g.add_edge(g.add_node("u", a), g.add_node("naked"), 1);
    try {
        assortativity_categorical(g, "color");
        FAIL("expected DataError");
    } catch (const DataError& e) {
        const std::string what = e.what();
        CHECK(what.find("naked") != std::string::npos);
        CHECK(what.find("color") != std::string::npos);
    }
}

TEST_CASE("relabeling categories leaves assortativity unchanged") {
    SplitMix64 mix(3);
    auto g = oracle::random_graph(17, 30, 0.12, true, 2);
    const char* labels[] = {"a", "b", "c", "d"};
    for (NodeId id = 0; id < g.node_count(); ++id) {
        g.attributes(id).labels["tag"] = labels[mix.below(4)];
    }
    const double before = assortativity_categorical(g, "tag");
    AttributedGraph renamed = g;
    for (NodeId id = 0; id < renamed.node_count(); ++id) {
        renamed.attributes(id).labels["tag"] =
            "long_prefix_" + renamed.attributes(id).labels["tag"];
    }
    CHECK(assortativity_categorical(renamed, "tag") ==
          doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("numeric assortativity canonical values") {
    // edges only between equal values, two distinct values present
    AttributedGraph g(false);
    NodeAttributes a1;
    a1.numbers["x"] = 1.0;
    NodeAttributes a2;
    a2.numbers["x"] = 2.0;
    g.add_edge(g.add_node("p", a1), g.add_node("q", a1), 1);
    g.add_edge(g.add_node("r", a2), g.add_node("s", a2), 1);
    CHECK(assortativity_numeric(g, "x") == doctest::Approx(1.0).epsilon(1e-12));

    // perfect matching between x and -x
    AttributedGraph m(false);
    for (int i = 1; i <= 3; ++i) {
        NodeAttributes plus;
        plus.numbers["x"] = i;
        NodeAttributes minus;
        minus.numbers["x"] = -i;
        m.add_edge(m.add_node("p" + std::to_string(i), plus),
                   m.add_node("m" + std::to_string(i), minus), 1);
    }
    CHECK(assortativity_numeric(m, "x") == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("numeric assortativity undefined on zero variance") {
    AttributedGraph g(false);
    NodeAttributes a;
    a.numbers["x"] = 5.0;
    g.add_edge(g.add_node("u", a), g.add_node("v", a), 1);
    CHECK_THROWS_AS(assortativity_numeric(g, "x"), UndefinedValueError);
}

TEST_CASE("affine transforms leave numeric assortativity unchanged") {
    auto g = oracle::random_graph(23, 40, 0.1, false, 2);
    SplitMix64 mix(9);
    for (NodeId id = 0; id < g.node_count(); ++id) {
        g.attributes(id).numbers["x"] = static_cast<double>(mix.below(1000));
    }
    const double before = assortativity_numeric(g, "x");
    AttributedGraph scaled = g;
    for (NodeId id = 0; id < scaled.node_count(); ++id) {
        auto& x = scaled.attributes(id).numbers["x"];
        x = 3.5 * x + 11.0;
    }
    CHECK(assortativity_numeric(scaled, "x") ==
          doctest::Approx(before).epsilon(1e-12));
}

TEST_CASE("degree assortativity fixtures") {
    // cycle: all degrees equal -> undefined
    AttributedGraph cycle(false);
    for (int i = 0; i < 5; ++i) cycle.add_node("c" + std::to_string(i));
    for (int i = 0; i < 5; ++i) {
        cycle.add_edge(static_cast<NodeId>(i), static_cast<NodeId>((i + 1) % 5), 1);
    }
    CHECK_THROWS_AS(assortativity_degree(cycle), UndefinedValueError);

    // star: two-point degree distribution -> -1
    AttributedGraph star(false);
    const NodeId hub = star.add_node("hub");
    for (int i = 0; i < 5; ++i) {
        star.add_edge(hub, star.add_node("l" + std::to_string(i)), 1);
    }
    CHECK(assortativity_degree(star) == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("degree assortativity matches a brute-force Pearson computation") {
    // two stars joined at their leaves
    AttributedGraph g(false);
    const NodeId h1 = g.add_node("h1");
    const NodeId h2 = g.add_node("h2");
    std::vector<NodeId> leaves1, leaves2;
    for (int i = 0; i < 3; ++i) {
        leaves1.push_back(g.add_node("a" + std::to_string(i)));
        leaves2.push_back(g.add_node("b" + std::to_string(i)));
        g.add_edge(h1, leaves1.back(), 1);
        g.add_edge(h2, leaves2.back(), 1);
    }
    g.add_edge(leaves1[0], leaves2[0], 1);

    // brute force over the undirected edge list, both orientations
    std::vector<double> deg(g.node_count(), 0.0);
    for (NodeId id = 0; id < g.node_count(); ++id) {
        deg[id] = static_cast<double>(g.total_degree(id));
    }
    double sx = 0, sy = 0, n = 0;
    for (const auto& e : g.edges()) {
        sx += deg[e.source] + deg[e.target];
        sy += deg[e.target] + deg[e.source];
        n += 2;
    }
    const double mx = sx / n, my = sy / n;
    double cov = 0, vx = 0, vy = 0;
    for (const auto& e : g.edges()) {
        for (const auto& [x, y] :
             {std::pair{deg[e.source], deg[e.target]},
              std::pair{deg[e.target], deg[e.source]}}) {
            cov += (x - mx) * (y - my);
            vx += (x - mx) * (x - mx);
            vy += (y - my) * (y - my);
        }
    }
    CHECK(assortativity_degree(g) ==
          doctest::Approx(cov / std::sqrt(vx * vy)).epsilon(1e-12));
}

TEST_CASE("structure record collects undefined values as nulls") {
    AttributedGraph g(true);
    g.add_node("solo");
    const auto record = structure_record(g);
    CHECK_FALSE(record.density.has_value());
    CHECK_FALSE(record.avg_shortest_path.has_value());
    CHECK(record.largest_wcc_size == 1);
    CHECK(record.largest_scc_size == 1);
    const auto j = to_json(record);
    CHECK(j.at("density").is_null());
    CHECK(structure_record_from_json(j) == record);
}

TEST_CASE("mixing matrix marginals are consistent") {
    auto g = oracle::random_graph(31, 20, 0.2, true, 3);
    SplitMix64 mix(5);
    const char* labels[] = {"x", "y", "z"};
    for (NodeId id = 0; id < g.node_count(); ++id) {
        g.attributes(id).labels["tag"] = labels[mix.below(3)];
    }
    const auto mm = mixing_matrix(g, "tag");
    double total = 0.0;
    for (std::size_t i = 0; i < mm.labels.size(); ++i) {
        double row = 0.0, col = 0.0;
        for (std::size_t j = 0; j < mm.labels.size(); ++j) {
            row += mm.e[i][j];
            col += mm.e[j][i];
            total += mm.e[i][j];
        }
        CHECK(row == doctest::Approx(mm.a[i]).epsilon(1e-12));
        CHECK(col == doctest::Approx(mm.b[i]).epsilon(1e-12));
    }
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_SUITE_END();
