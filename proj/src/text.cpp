#include "acqgraph/text.hpp"

#include <cctype>
#include <cmath>

#include "acqgraph/errors.hpp"

namespace acqgraph {

TokenVector tokenize(std::string_view text) {
    TokenVector vec;
    std::string token;
    auto flush = [&] {
        if (!token.empty()) {
            ++vec.counts[token];
            token.clear();
        }
    };
    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            token.push_back(static_cast<char>(std::tolower(c)));
        } else {
            flush();
        }
    }
    flush();
    return vec;
}

double cosine(const TokenVector& a, const TokenVector& b) {
    if (a.empty() || b.empty()) return 0.0;
    long long dot = 0, norm_a = 0, norm_b = 0;
    for (const auto& [token, count] : a.counts) {
        norm_a += static_cast<long long>(count) * count;
        const auto it = b.counts.find(token);
        if (it != b.counts.end()) {
            dot += static_cast<long long>(count) * it->second;
        }
    }
    for (const auto& [token, count] : b.counts) {
        norm_b += static_cast<long long>(count) * count;
    }
    return static_cast<double>(dot) /
           std::sqrt(static_cast<double>(norm_a) * static_cast<double>(norm_b));
}

std::string infer_primary(std::string_view description,
                          const std::vector<std::string>& candidates) {
    if (candidates.empty()) {
        throw DataError("infer_primary: empty candidate list");
    }
    const TokenVector desc = tokenize(description);
    std::size_t best = 0;
    double best_sim = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const double sim = cosine(desc, tokenize(candidates[i]));
        if (sim > best_sim) {
            best_sim = sim;
            best = i;
        }
    }
    return candidates[best];
}

void infer_primaries(std::vector<OrgRecord>& orgs) {
    for (auto& org : orgs) {
        org.primary_category = infer_primary(org.description, org.category_list);
        org.primary_category_group =
            infer_primary(org.description, org.category_group_list);
    }
}

}  // namespace acqgraph
