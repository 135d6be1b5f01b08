#include "acqgraph/ergm.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "acqgraph/errors.hpp"
#include "acqgraph/rng.hpp"

namespace acqgraph {

std::string ErgmTerm::name() const {
    switch (kind) {
        case Kind::Edges: return "edges";
        case Kind::Match: return "match:" + attribute;
        case Kind::AbsDiff: return "absdiff:" + attribute;
    }
    return "edges";
}

std::string ErgmTerm::label() const {
    if (kind == Kind::Edges) return "edges";
    if (attribute == "country") return "Country";
    if (attribute == "region") return "Region";
    if (attribute == "city") return "City";
    if (attribute == "category") return "Category";
    if (attribute == "category_group") return "Category group";
    if (attribute == "founded_month") return "Founding date (year-month)";
    return attribute;
}

std::optional<ErgmTerm> ErgmTerm::parse(std::string_view name) {
    if (name == "edges") return edges();
    if (name.starts_with("match:") && name.size() > 6) {
        return match(std::string(name.substr(6)));
    }
    if (name.starts_with("absdiff:") && name.size() > 8) {
        return absdiff(std::string(name.substr(8)));
    }
    return std::nullopt;
}

std::vector<ErgmTerm> default_ergm_terms() {
    return {ErgmTerm::edges(),
            ErgmTerm::match("country"),
            ErgmTerm::match("region"),
            ErgmTerm::match("city"),
            ErgmTerm::match("category_group"),
            ErgmTerm::match("category"),
            ErgmTerm::absdiff("founded_month")};
}

namespace {

// Attribute columns resolved up front so dyad enumeration touches no maps.
struct TermColumns {
    std::vector<std::vector<const std::string*>> labels;  // per Match term
    std::vector<std::vector<double>> numbers;              // per AbsDiff term
};

TermColumns resolve_columns(const AttributedGraph& g,
                            const std::vector<ErgmTerm>& terms) {
    TermColumns cols;
    for (const auto& term : terms) {
        if (term.kind == ErgmTerm::Kind::Match) {
            std::vector<const std::string*> column(g.node_count());
            for (NodeId id = 0; id < g.node_count(); ++id) {
                const auto& labels = g.attributes(id).labels;
                const auto it = labels.find(term.attribute);
                if (it == labels.end()) {
                    throw DataError("node \"" + g.key_of(id) +
                                    "\" missing attribute \"" + term.attribute +
                                    "\"");
                }
                column[id] = &it->second;
            }
            cols.labels.push_back(std::move(column));
        } else if (term.kind == ErgmTerm::Kind::AbsDiff) {
            std::vector<double> column(g.node_count());
            for (NodeId id = 0; id < g.node_count(); ++id) {
                const auto& numbers = g.attributes(id).numbers;
                const auto it = numbers.find(term.attribute);
                if (it == numbers.end()) {
                    throw DataError("node \"" + g.key_of(id) +
                                    "\" missing numeric attribute \"" +
                                    term.attribute + "\"");
                }
                column[id] = it->second;
            }
            cols.numbers.push_back(std::move(column));
        }
    }
    return cols;
}

void fill_row(const std::vector<ErgmTerm>& terms, const TermColumns& cols,
              NodeId u, NodeId v, double* row) {
    std::size_t label_i = 0, number_i = 0;
    for (std::size_t t = 0; t < terms.size(); ++t) {
        switch (terms[t].kind) {
            case ErgmTerm::Kind::Edges:
                row[t] = 1.0;
                break;
            case ErgmTerm::Kind::Match:
                row[t] = *cols.labels[label_i][u] == *cols.labels[label_i][v]
                             ? 1.0
                             : 0.0;
                ++label_i;
                break;
            case ErgmTerm::Kind::AbsDiff:
                row[t] = std::abs(cols.numbers[number_i][u] -
                                  cols.numbers[number_i][v]);
                ++number_i;
                break;
        }
    }
}

}  // namespace

DyadDesign build_design(const AttributedGraph& g,
                        const std::vector<ErgmTerm>& terms,
                        const ErgmSampling& sampling, std::size_t dyad_budget) {
    if (terms.empty()) throw DataError("ERGM needs at least one term");
    const std::size_t n = g.node_count();
    const std::size_t dyads =
        g.directed() ? n * (n - 1) : n * (n - 1) / 2;

    DyadDesign design;
    design.terms = terms;
    design.n_dyads_total = dyads;
    const TermColumns cols = resolve_columns(g, terms);
    const std::size_t k = terms.size();

    auto push_dyad = [&](NodeId u, NodeId v, bool edge, double weight) {
        const std::size_t base = design.features.size();
        design.features.resize(base + k);
        fill_row(terms, cols, u, v, design.features.data() + base);
        design.labels.push_back(edge ? 1 : 0);
        design.weights.push_back(weight);
    };

    if (sampling.mode == ErgmSampling::Mode::Exact) {
        if (dyads > dyad_budget) {
            throw DataError(
                "exact dyad enumeration would produce " + std::to_string(dyads) +
                " rows (budget " + std::to_string(dyad_budget) +
                "); use case-control sampling");
        }
        for (NodeId u = 0; u < n; ++u) {
            const NodeId begin = g.directed() ? 0 : u + 1;
            for (NodeId v = begin; v < n; ++v) {
                if (u == v) continue;
                push_dyad(u, v, g.weight(u, v) > 0, 1.0);
            }
        }
        return design;
    }

    // Case-control: keep every edge dyad, sample ratio-times as many
    // non-edges uniformly without replacement, weight them back up.
    if (sampling.ratio <= 0.0) {
        throw DataError("case-control ratio must be positive");
    }
    std::size_t n_edges = 0;
    for (const auto& e : g.edges()) {
        if (e.source == e.target) continue;
        push_dyad(e.source, e.target, true, 1.0);
        ++n_edges;
    }
    if (n_edges == 0) throw DataError("case-control sampling needs edges");
    const std::size_t non_edges_total = dyads - n_edges;
    std::size_t target = static_cast<std::size_t>(
        std::llround(sampling.ratio * static_cast<double>(n_edges)));
    target = std::min(target, non_edges_total);
    if (target == 0) throw DataError("case-control sample came out empty");

    const double weight =
        static_cast<double>(non_edges_total) / static_cast<double>(target);
    SplitMix64 rng(derive_seed(sampling.seed, "ergm-case-control"));
    std::set<std::pair<NodeId, NodeId>> sampled;
    while (sampled.size() < target) {
        NodeId u = static_cast<NodeId>(rng.below(n));
        NodeId v = static_cast<NodeId>(rng.below(n));
        if (u == v) continue;
        if (!g.directed() && u > v) std::swap(u, v);
        if (g.weight(u, v) > 0) continue;
        if (!sampled.emplace(u, v).second) continue;
        push_dyad(u, v, false, weight);
    }
    return design;
}

namespace {

// log(1 + e^x) without overflow.
double log1p_exp(double x) {
    return x > 0.0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double sigmoid(double x) {
    return x >= 0.0 ? 1.0 / (1.0 + std::exp(-x))
                    : std::exp(x) / (1.0 + std::exp(x));
}

// Gaussian elimination with partial pivoting; solves in place. Returns false
// on a (numerically) singular matrix.
bool solve_dense(std::vector<double>& a, std::vector<double>& b, std::size_t k) {
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < k; ++r) {
            if (std::abs(a[r * k + col]) > std::abs(a[pivot * k + col])) pivot = r;
        }
        if (std::abs(a[pivot * k + col]) < 1e-12) return false;
        if (pivot != col) {
            for (std::size_t c = 0; c < k; ++c) {
                std::swap(a[col * k + c], a[pivot * k + c]);
            }
            std::swap(b[col], b[pivot]);
        }
        const double inv = 1.0 / a[col * k + col];
        for (std::size_t r = col + 1; r < k; ++r) {
            const double factor = a[r * k + col] * inv;
            if (factor == 0.0) continue;
            for (std::size_t c = col; c < k; ++c) {
                a[r * k + c] -= factor * a[col * k + c];
            }
            b[r] -= factor * b[col];
        }
    }
    for (std::size_t col = k; col-- > 0;) {
        double sum = b[col];
        for (std::size_t c = col + 1; c < k; ++c) {
            sum -= a[col * k + c] * b[c];
        }
        b[col] = sum / a[col * k + col];
    }
    return true;
}

// X^T W X with W_ii = weight_i * mu_i * (1 - mu_i).
std::vector<double> information_matrix(const DyadDesign& design,
                                       std::span<const double> theta) {
    const std::size_t k = design.n_terms();
    std::vector<double> info(k * k, 0.0);
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        const auto row = design.row(i);
        double eta = 0.0;
        for (std::size_t t = 0; t < k; ++t) eta += theta[t] * row[t];
        const double mu = sigmoid(eta);
        const double w = design.weights[i] * mu * (1.0 - mu);
        for (std::size_t p = 0; p < k; ++p) {
            for (std::size_t q = p; q < k; ++q) {
                info[p * k + q] += w * row[p] * row[q];
            }
        }
    }
    for (std::size_t p = 0; p < k; ++p) {
        for (std::size_t q = 0; q < p; ++q) info[p * k + q] = info[q * k + p];
    }
    return info;
}

}  // namespace

double ergm_log_likelihood(const DyadDesign& design,
                           std::span<const double> theta) {
    const std::size_t k = design.n_terms();
    double ll = 0.0;
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        const auto row = design.row(i);
        double eta = 0.0;
        for (std::size_t t = 0; t < k; ++t) eta += theta[t] * row[t];
        const double y = static_cast<double>(design.labels[i]);
        ll += design.weights[i] * (y * eta - log1p_exp(eta));
    }
    return ll;
}

long double ergm_log_likelihood_precise(const DyadDesign& design,
                                        std::span<const double> theta) {
    const std::size_t k = design.n_terms();
    long double ll = 0.0L;
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        const auto row = design.row(i);
        long double eta = 0.0L;
        for (std::size_t t = 0; t < k; ++t) {
            eta += static_cast<long double>(theta[t]) * row[t];
        }
        const long double y = design.labels[i];
        const long double softplus =
            eta > 0.0L ? eta + std::log1p(std::exp(-eta))
                       : std::log1p(std::exp(eta));
        ll += static_cast<long double>(design.weights[i]) * (y * eta - softplus);
    }
    return ll;
}

std::vector<double> ergm_score(const DyadDesign& design,
                               std::span<const double> theta) {
    const std::size_t k = design.n_terms();
    std::vector<double> score(k, 0.0);
    for (std::size_t i = 0; i < design.n_rows(); ++i) {
        const auto row = design.row(i);
        double eta = 0.0;
        for (std::size_t t = 0; t < k; ++t) eta += theta[t] * row[t];
        const double resid =
            design.weights[i] * (static_cast<double>(design.labels[i]) - sigmoid(eta));
        for (std::size_t t = 0; t < k; ++t) score[t] += resid * row[t];
    }
    return score;
}

ErgmFit fit(const DyadDesign& design, double tolerance, int max_iterations) {
    const std::size_t k = design.n_terms();
    if (design.n_rows() == 0) throw DataError("empty dyad design");
    bool has_edge = false, has_non_edge = false;
    for (const auto label : design.labels) {
        (label ? has_edge : has_non_edge) = true;
    }
    if (!has_edge || !has_non_edge) {
        throw DataError("ERGM fit needs at least one edge and one non-edge dyad");
    }

    ErgmFit result;
    result.theta.assign(k, 0.0);

    constexpr double kSeparationBound = 30.0;
    double ll = ergm_log_likelihood(design, result.theta);
    for (int iter = 1; iter <= max_iterations; ++iter) {
        result.iterations = iter;
        std::vector<double> info = information_matrix(design, result.theta);
        std::vector<double> step = ergm_score(design, result.theta);
        if (!solve_dense(info, step, k)) {
            throw DataError("singular information matrix in ERGM fit");
        }
        // Newton with step halving when the full step overshoots.
        std::vector<double> candidate(k);
        double scale = 1.0;
        double new_ll = 0.0;
        for (int half = 0; half < 30; ++half, scale *= 0.5) {
            for (std::size_t t = 0; t < k; ++t) {
                candidate[t] = result.theta[t] + scale * step[t];
            }
            new_ll = ergm_log_likelihood(design, candidate);
            if (new_ll >= ll - 1e-12) break;
        }
        double max_step = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            max_step = std::max(max_step, std::abs(candidate[t] - result.theta[t]));
        }
        result.theta = candidate;
        ll = new_ll;
        for (std::size_t t = 0; t < k; ++t) {
            if (std::abs(result.theta[t]) > kSeparationBound) {
                throw ConvergenceError(
                    "ERGM fit diverged; perfect separation suspected for term "
                    "\"" + design.terms[t].name() + "\"",
                    iter);
            }
        }
        if (max_step < tolerance) {
            result.converged = true;
            break;
        }
    }
    if (!result.converged) {
        throw ConvergenceError("ERGM fit did not converge after " +
                                   std::to_string(max_iterations) +
                                   " iterations",
                               max_iterations);
    }

    // Standard errors from the inverse observed information at the optimum.
    std::vector<double> info = information_matrix(design, result.theta);
    result.std_err.assign(k, 0.0);
    for (std::size_t col = 0; col < k; ++col) {
        std::vector<double> a = info;
        std::vector<double> e(k, 0.0);
        e[col] = 1.0;
        if (!solve_dense(a, e, k)) {
            throw DataError("singular information matrix in ERGM fit");
        }
        if (e[col] <= 0.0) {
            throw DataError("non-positive variance estimate in ERGM fit");
        }
        result.std_err[col] = std::sqrt(e[col]);
    }

    result.log_likelihood = ergm_log_likelihood(design, result.theta);
    result.aic = 2.0 * static_cast<double>(k) - 2.0 * result.log_likelihood;
    return result;
}

ErgmReport summarize(const ErgmFit& fit, const DyadDesign& design) {
    ErgmReport report;
    report.log_likelihood = fit.log_likelihood;
    report.aic = fit.aic;
    report.converged = fit.converged;
    report.iterations = fit.iterations;
    for (std::size_t t = 0; t < design.n_terms(); ++t) {
        TermSummary summary;
        summary.term = design.terms[t].name();
        summary.label = design.terms[t].label();
        summary.estimate = fit.theta[t];
        summary.std_err = fit.std_err[t];
        summary.z = fit.std_err[t] > 0.0 ? fit.theta[t] / fit.std_err[t] : 0.0;
        summary.p_value = std::erfc(std::abs(summary.z) / std::sqrt(2.0));
        if (summary.p_value < 0.001) {
            summary.stars = "***";
        } else if (summary.p_value < 0.01) {
            summary.stars = "**";
        } else if (summary.p_value < 0.05) {
            summary.stars = "*";
        }
        report.terms.push_back(std::move(summary));
    }
    return report;
}

nlohmann::json to_json(const ErgmReport& report) {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& term : report.terms) {
        terms.push_back({
            {"term", term.term},
            {"label", term.label},
            {"estimate", term.estimate},
            {"std_err", term.std_err},
            {"z", term.z},
            {"p_value", term.p_value},
            {"stars", term.stars},
        });
    }
    return nlohmann::json{
        {"terms", terms},
        {"log_likelihood", report.log_likelihood},
        {"AIC", report.aic},
        {"converged", report.converged},
        {"iterations", report.iterations},
        {"significance", "* p < 0.05, ** p < 0.01, *** p < 0.001"},
    };
}

}  // namespace acqgraph
