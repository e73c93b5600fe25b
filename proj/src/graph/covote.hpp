#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "model/types.hpp"

namespace daogov {

// Bipartite users-to-proposals vote graph. One edge per (user, proposal) with
// the chosen option as edge feature; revotes deduplicate to the latest by
// timestamp. Magnitude votes register their dominant option.
struct BipartiteVoteGraph {
    std::vector<Address> users;
    std::vector<std::string> proposal_ids;
    std::vector<std::string> spaces;
    std::vector<std::uint32_t> proposal_space;  // index into spaces

    // per proposal: (user index, option), sorted by user index
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> votes_by_proposal;

    std::size_t edge_count() const;
    std::vector<std::size_t> user_degrees() const;
};

BipartiteVoteGraph build_bipartite(std::span<const Proposal> proposals,
                                   std::span<const Vote> votes);

// The four projection flavors: AA keeps everything, AW keeps only votes
// for the winning option, TA restricts to the top DAOs by TVL, TW both.
enum class CovoteVariant { AA, AW, TA, TW };

const char* to_string(CovoteVariant v);
CovoteVariant covote_variant_from_string(const std::string& s);

struct CoVoteEdge {
    std::uint32_t a = 0;  // node indices, a < b
    std::uint32_t b = 0;
    std::uint32_t weight = 0;  // co-voted proposals, > threshold
};

// Thresholded monopartite projection on voters. Nodes are the endpoints of
// the retained edges (weight strictly greater than the threshold).
struct CoVoteGraph {
    CovoteVariant variant = CovoteVariant::AA;
    std::uint32_t threshold = 0;
    std::vector<Address> nodes;
    std::vector<bool> contributor;  // holds >= 1 contribution to any space
    std::vector<CoVoteEdge> edges;  // sorted by (a, b)
};

// The unthresholded projection is quadratic and never materialized: voters
// are scanned one at a time, accumulating co-vote counts against later users
// only, and edges are emitted directly when they clear the threshold.
CoVoteGraph project(const BipartiteVoteGraph& bipartite, CovoteVariant variant,
                    std::uint32_t threshold,
                    const std::unordered_map<std::string, std::uint32_t>* winning_options,
                    const std::unordered_set<std::string>* top_spaces,
                    const std::unordered_set<Address, AddressHash>& contributors,
                    unsigned workers = 1);

}  // namespace daogov
