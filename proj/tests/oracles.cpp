#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "acqgraph/rng.hpp"

namespace oracle {

std::vector<std::vector<int>> undirected_adjacency(const AttributedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<int>> a(n, std::vector<int>(n, 0));
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        a[e.source][e.target] = 1;
        a[e.target][e.source] = 1;
    }
    return a;
}

std::vector<std::vector<double>> weighted_adjacency(const AttributedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        a[e.source][e.target] += static_cast<double>(e.weight);
        if (!g.directed()) a[e.target][e.source] += static_cast<double>(e.weight);
    }
    return a;
}

double transitivity(const AttributedGraph& g) {
    const auto a = undirected_adjacency(g);
    const std::size_t n = a.size();
    long long triangles = 0, triples = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t k = 0; k < n; ++k) {
                if (i == j || j == k || i == k) continue;
                if (a[i][j] && a[j][k]) {
                    ++triples;  // ordered path i-j-k centered at j
                    if (a[i][k]) ++triangles;
                }
            }
        }
    }
    // ordered counts double both quantities, the ratio is unchanged;
    // triangles here = 6 * triangle count, triples = 2 * connected triples
    if (triples == 0) return 0.0;
    return static_cast<double>(triangles) / static_cast<double>(triples);
}

double avg_clustering(const AttributedGraph& g) {
    const auto a = undirected_adjacency(g);
    const std::size_t n = a.size();
    double sum = 0.0;
    for (std::size_t v = 0; v < n; ++v) {
        long deg = 0;
        for (std::size_t u = 0; u < n; ++u) deg += a[v][u];
        if (deg < 2) continue;
        long links = 0;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                if (a[v][i] && a[v][j] && a[i][j]) ++links;
            }
        }
        sum += 2.0 * static_cast<double>(links) /
               (static_cast<double>(deg) * static_cast<double>(deg - 1));
    }
    return n == 0 ? 0.0 : sum / static_cast<double>(n);
}

std::vector<std::vector<long>> apsp_undirected(const AttributedGraph& g) {
    const auto a = undirected_adjacency(g);
    const std::size_t n = a.size();
    const long inf = 1L << 40;
    std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (a[i][j]) d[i][j] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    for (auto& row : d) {
        for (auto& v : row) {
            if (v >= inf) v = -1;
        }
    }
    return d;
}

std::optional<double> avg_shortest_path(const AttributedGraph& g) {
    const auto d = apsp_undirected(g);
    const std::size_t n = d.size();
    // find the largest component via the distance matrix
    std::vector<int> comp(n, -1);
    int n_comp = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (comp[i] != -1) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (d[i][j] >= 0) comp[j] = n_comp;
        }
        ++n_comp;
    }
    std::vector<std::size_t> sizes(static_cast<std::size_t>(n_comp), 0);
    for (std::size_t i = 0; i < n; ++i) ++sizes[comp[i]];
    // size ties: smallest minimum node key
    int best = -1;
    std::string best_key;
    for (int c = 0; c < n_comp; ++c) {
        std::string min_key;
        for (std::size_t i = 0; i < n; ++i) {
            if (comp[i] == c && (min_key.empty() || g.key_of(i) < min_key)) {
                min_key = g.key_of(i);
            }
        }
        if (best == -1 || sizes[c] > sizes[best] ||
            (sizes[c] == sizes[best] && min_key < best_key)) {
            best = c;
            best_key = min_key;
        }
    }
    if (best == -1 || sizes[best] < 2) return std::nullopt;
    long double total = 0;
    long pairs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (i != j && comp[i] == best && comp[j] == best) {
                total += d[i][j];
                ++pairs;
            }
        }
    }
    return static_cast<double>(total / pairs);
}

std::size_t largest_weak_component(const AttributedGraph& g) {
    const auto d = apsp_undirected(g);
    std::size_t best = 0;
    for (std::size_t i = 0; i < d.size(); ++i) {
        std::size_t size = 0;
        for (std::size_t j = 0; j < d.size(); ++j) {
            if (d[i][j] >= 0) ++size;
        }
        best = std::max(best, size);
    }
    return best;
}

std::size_t largest_strong_component(const AttributedGraph& g) {
    const std::size_t n = g.node_count();
    std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i) reach[i][i] = true;
    for (const auto& e : g.edges()) {
        reach[e.source][e.target] = true;
        if (!g.directed()) reach[e.target][e.source] = true;
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            if (!reach[i][k]) continue;
            for (std::size_t j = 0; j < n; ++j) {
                if (reach[k][j]) reach[i][j] = true;
            }
        }
    }
    std::size_t best = 0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t size = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (reach[i][j] && reach[j][i]) ++size;
        }
        best = std::max(best, size);
    }
    return best;
}

std::map<std::string, double> betweenness(const AttributedGraph& g,
                                          bool normalized) {
    const std::size_t n = g.node_count();
    const long inf = 1L << 40;
    // directed hop distances (undirected graphs fill both directions)
    std::vector<std::vector<long>> d(n, std::vector<long>(n, inf));
    std::vector<std::vector<bool>> adj(n, std::vector<bool>(n, false));
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        adj[e.source][e.target] = true;
        if (!g.directed()) adj[e.target][e.source] = true;
    }
    for (std::size_t i = 0; i < n; ++i) {
        d[i][i] = 0;
        for (std::size_t j = 0; j < n; ++j) {
            if (adj[i][j]) d[i][j] = 1;
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
            }
        }
    }
    // sigma(s, t): DP in order of distance from s
    std::vector<std::vector<double>> sigma(n, std::vector<double>(n, 0.0));
    for (std::size_t s = 0; s < n; ++s) {
        sigma[s][s] = 1.0;
        std::vector<std::size_t> order;
        for (std::size_t t = 0; t < n; ++t) {
            if (t != s && d[s][t] < inf) order.push_back(t);
        }
        std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return d[s][a] < d[s][b];
        });
        for (const std::size_t t : order) {
            double count = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                if (adj[p][t] && d[s][p] + 1 == d[s][t]) count += sigma[s][p];
            }
            sigma[s][t] = count;
        }
    }
    std::map<std::string, double> result;
    for (NodeId u = 0; u < n; ++u) {
        double score = 0.0;
        for (std::size_t s = 0; s < n; ++s) {
            for (std::size_t t = 0; t < n; ++t) {
                if (s == t || s == u || t == u) continue;
                if (d[s][t] >= inf || sigma[s][t] == 0.0) continue;
                if (d[s][u] + d[u][t] == d[s][t]) {
                    score += sigma[s][u] * sigma[u][t] / sigma[s][t];
                }
            }
        }
        if (!g.directed()) score /= 2.0;
        if (normalized) {
            const double pairs =
                g.directed()
                    ? static_cast<double>(n - 1) * static_cast<double>(n - 2)
                    : static_cast<double>(n - 1) * static_cast<double>(n - 2) / 2.0;
            score = n > 2 ? score / pairs : 0.0;
        }
        result[g.key_of(u)] = score;
    }
    return result;
}

std::map<std::pair<std::string, std::string>, long> projection_weights(
    const std::vector<acqgraph::AcquisitionEvent>& events,
    bool hub_is_acquirer) {
    std::map<std::string, std::set<std::string>> hubs_of;  // spoke -> hubs
    for (const auto& e : events) {
        const std::string& hub = hub_is_acquirer ? e.acquirer_id : e.acquiree_id;
        const std::string& spoke = hub_is_acquirer ? e.acquiree_id : e.acquirer_id;
        hubs_of[spoke].insert(hub);
    }
    std::map<std::pair<std::string, std::string>, long> weights;
    for (auto it = hubs_of.begin(); it != hubs_of.end(); ++it) {
        for (auto jt = std::next(it); jt != hubs_of.end(); ++jt) {
            std::vector<std::string> shared;
            std::set_intersection(it->second.begin(), it->second.end(),
                                  jt->second.begin(), jt->second.end(),
                                  std::back_inserter(shared));
            if (!shared.empty()) {
                weights[{it->first, jt->first}] =
                    static_cast<long>(shared.size());
            }
        }
    }
    return weights;
}

std::vector<double> principal_eigenvector_symmetric(
    std::vector<std::vector<double>> a) {
    const std::size_t n = a.size();
    std::vector<std::vector<double>> v(n, std::vector<double>(n, 0.0));
    for (std::size_t i = 0; i < n; ++i) v[i][i] = 1.0;

    for (int sweep = 0; sweep < 200; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
        }
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                if (std::abs(a[p][q]) < 1e-18) continue;
                const double theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) +
                                  std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double vkp = v[k][p], vkq = v[k][q];
                    v[k][p] = c * vkp - s * vkq;
                    v[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    std::size_t top = 0;
    for (std::size_t i = 1; i < n; ++i) {
        if (a[i][i] > a[top][top]) top = i;
    }
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) x[i] = v[i][top];
    // orient non-negatively
    double sum = 0.0;
    for (const double value : x) sum += value;
    if (sum < 0) {
        for (auto& value : x) value = -value;
    }
    return x;
}

std::map<std::string, double> pagerank_linear(const AttributedGraph& g,
                                              double alpha) {
    const std::size_t n = g.node_count();
    const auto w = weighted_adjacency(g);
    // transition matrix column form: x = alpha * P x + (1-alpha)/n, where
    // P[v][u] = w(u,v)/out(u) and dangling columns spread uniformly
    std::vector<double> out(n, 0.0);
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = 0; v < n; ++v) out[u] += w[u][v];
    }
    std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
    for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t u = 0; u < n; ++u) {
            double p = 0.0;
            if (out[u] > 0.0) {
                p = w[u][v] / out[u];
            } else {
                p = 1.0 / static_cast<double>(n);
            }
            m[v][u] = (v == u ? 1.0 : 0.0) - alpha * p;
            if (v == u && out[u] == 0.0) {
                m[v][u] = 1.0 - alpha * p;  // same expression, kept explicit
            }
        }
        m[v][n] = (1.0 - alpha) / static_cast<double>(n);
    }
    // Gaussian elimination
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        }
        std::swap(m[col], m[pivot]);
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col || m[r][col] == 0.0) continue;
            const double factor = m[r][col] / m[col][col];
            for (std::size_t c = col; c <= n; ++c) m[r][c] -= factor * m[col][c];
        }
    }
    std::map<std::string, double> result;
    double sum = 0.0;
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = m[i][n] / m[i][i];
        sum += x[i];
    }
    for (std::size_t i = 0; i < n; ++i) {
        result[g.key_of(static_cast<NodeId>(i))] = x[i] / sum;
    }
    return result;
}

double modularity(const AttributedGraph& g,
                  const std::map<std::string, int>& assignment,
                  double resolution) {
    // dense double loop over the weighted undirected matrix
    const std::size_t n = g.node_count();
    std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
    // antiparallel directed edges accumulate into one symmetric entry, which
    // matches the undirected view the library computes on
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        a[e.source][e.target] += static_cast<double>(e.weight);
        a[e.target][e.source] += static_cast<double>(e.weight);
    }
    std::vector<double> k(n, 0.0);
    double two_m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) k[i] += a[i][j];
        two_m += k[i];
    }
    double q = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (assignment.at(g.key_of(i)) != assignment.at(g.key_of(j))) continue;
            q += a[i][j] - resolution * k[i] * k[j] / two_m;
        }
    }
    return q / two_m;
}

std::vector<double> logistic_gradient_fit(
    const std::vector<std::vector<double>>& raw_rows,
    const std::vector<int>& labels, const std::vector<double>& weights,
    int max_iterations, double grad_tolerance) {
    const std::size_t k = raw_rows.empty() ? 0 : raw_rows[0].size();
    // column scaling for conditioning; undone before returning
    std::vector<double> scale(k, 1.0);
    for (const auto& row : raw_rows) {
        for (std::size_t j = 0; j < k; ++j) {
            scale[j] = std::max(scale[j], std::abs(row[j]));
        }
    }
    std::vector<std::vector<double>> rows = raw_rows;
    for (auto& row : rows) {
        for (std::size_t j = 0; j < k; ++j) row[j] /= scale[j];
    }
    std::vector<double> theta(k, 0.0), prev_theta(k, 0.0);
    std::vector<double> grad(k, 0.0), prev_grad(k, 0.0);
    auto gradient = [&](const std::vector<double>& t) {
        std::vector<double> out(k, 0.0);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            double eta = 0.0;
            for (std::size_t j = 0; j < k; ++j) eta += t[j] * rows[i][j];
            const double mu =
                eta >= 0 ? 1.0 / (1.0 + std::exp(-eta))
                         : std::exp(eta) / (1.0 + std::exp(eta));
            const double r = weights[i] * (labels[i] - mu);
            for (std::size_t j = 0; j < k; ++j) out[j] += r * rows[i][j];
        }
        return out;
    };
    double step = 1e-3;
    grad = gradient(theta);
    for (int iter = 0; iter < max_iterations; ++iter) {
        double norm = 0.0;
        for (const double gv : grad) norm = std::max(norm, std::abs(gv));
        if (norm < grad_tolerance) break;
        prev_theta = theta;
        prev_grad = grad;
        for (std::size_t j = 0; j < k; ++j) theta[j] += step * grad[j];
        grad = gradient(theta);
        // Barzilai-Borwein step length
        double sy = 0.0, ss = 0.0;
        for (std::size_t j = 0; j < k; ++j) {
            const double s = theta[j] - prev_theta[j];
            const double y = grad[j] - prev_grad[j];
            sy += s * y;
            ss += s * s;
        }
        if (sy < 0.0) {
            step = std::min(ss / -sy, 1e4);
        } else {
            step = 1e-3;
        }
    }
    for (std::size_t j = 0; j < k; ++j) theta[j] /= scale[j];
    return theta;
}

AttributedGraph random_graph(std::uint64_t seed, std::size_t n, double p,
                             bool directed, int max_multiplicity) {
    acqgraph::SplitMix64 rng(seed);
    AttributedGraph g(directed);
    char key[24];
    for (std::size_t i = 0; i < n; ++i) {
        std::snprintf(key, sizeof key, "n%04zu", i);
        g.add_node(key);
    }
    for (std::size_t u = 0; u < n; ++u) {
        for (std::size_t v = directed ? 0 : u + 1; v < n; ++v) {
            if (u == v) continue;
            if (rng.uniform() < p) {
                const acqgraph::Weight w =
                    1 + static_cast<acqgraph::Weight>(
                            rng.below(static_cast<std::uint64_t>(max_multiplicity)));
                g.add_edge(static_cast<NodeId>(u), static_cast<NodeId>(v), w);
            }
        }
    }
    return g;
}

double cosine_similarity(const std::vector<double>& a,
                         const std::vector<double>& b) {
    double dot = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    return std::abs(dot) / std::sqrt(na * nb);
}

}  // namespace oracle
