#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "acqgraph/records.hpp"

namespace acqgraph {

// Bag-of-words term counts. Tokens are lowercase alphanumeric runs.
struct TokenVector {
    std::map<std::string, long> counts;

    bool empty() const { return counts.empty(); }
    bool operator==(const TokenVector&) const = default;
};

// Lowercases, splits on non-alphanumeric bytes, keeps raw term counts.
// Deliberately minimal: no stemming, no stop words, no IDF. Swap this out if
// a different preprocessing is wanted; everything downstream only sees the
// counts.
TokenVector tokenize(std::string_view text);

// dot(a,b) / (|a|*|b|), in [0,1]; 0 when either vector is empty.
double cosine(const TokenVector& a, const TokenVector& b);

// Argmax of cosine(description, candidate) over candidates. Ties go to the
// earlier list position, so the result is total and deterministic even when
// every similarity is zero. Candidates must be non-empty.
std::string infer_primary(std::string_view description,
                          const std::vector<std::string>& candidates);

// Fills primary_category and primary_category_group on every record from its
// description and its own candidate lists.
void infer_primaries(std::vector<OrgRecord>& orgs);

}  // namespace acqgraph
