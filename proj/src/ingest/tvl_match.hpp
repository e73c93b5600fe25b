#pragma once

#include <map>
#include <string>
#include <vector>

#include "ingest/bundle.hpp"

namespace daogov {

// Result of linking TVL records to spaces. Multiple records linking to one
// space aggregate by summation (multi-version protocols), giving a 1:1 map.
struct TvlMatchResult {
    std::map<std::string, double> tvl_by_space;

    // Records that linked to >1 candidate space; linked to the best-scoring
    // one and listed here for human inspection instead of being dropped.
    struct AmbiguousMatch {
        std::string identifier;
        std::string linked_space;
        std::vector<std::string> candidates;
    };
    std::vector<AmbiguousMatch> ambiguous;

    std::vector<std::string> unmatched_identifiers;
};

// Lowercases and splits on non-alphanumeric runs.
std::vector<std::string> tokenize_name(const std::string& s);

// |A ∩ B| / |A ∪ B| over token sets; 0 when both empty.
double jaccard(const std::vector<std::string>& a, const std::vector<std::string>& b);

// Linking order: exact identifier == space id first, then fuzzy matches with
// Jaccard(name tokens) >= 0.5 AND Jaccard(identifier tokens) >= 0.6.
// Unmatched records are reported, never fatal.
TvlMatchResult match_tvl(std::span<const Space> spaces, std::span<const TvlRecord> records);

}  // namespace daogov
