#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "ingest/bundle.hpp"
#include "json.hpp"

namespace daogov {

// Per-rule removal counts. For every entity class,
// before − sum(removed_*) == after.
struct CleaningReport {
    std::uint64_t spaces_before = 0;
    std::uint64_t spaces_removed_immature = 0;
    std::uint64_t spaces_after = 0;

    std::uint64_t proposals_before = 0;
    std::uint64_t proposals_removed_non_final = 0;
    std::uint64_t proposals_removed_non_single_choice = 0;
    std::uint64_t proposals_removed_score_inconsistent = 0;
    std::uint64_t proposals_removed_space_dropped = 0;
    std::uint64_t proposals_after = 0;

    std::uint64_t votes_before = 0;
    std::uint64_t votes_removed_proposal_dropped = 0;
    std::uint64_t votes_removed_space_dropped = 0;
    std::uint64_t votes_after = 0;

    std::uint64_t contributions_before = 0;
    std::uint64_t contributions_removed_space_dropped = 0;
    std::uint64_t contributions_after = 0;

    nlohmann::json to_json() const;
};

struct CleanResult {
    DatasetBundle bundle;
    CleaningReport report;
};

// Maturity filter and proposal hygiene:
//   - proposals must be final, single-choice, and score-consistent (per-option
//     vote sums match reported_scores within 1e-6 relative tolerance);
//   - a space survives iff its TVL is at least 100k USD or it ranks in the
//     top 500 (inclusive at ties) on at least one of: total proposals,
//     proposals with more than ten votes, follower count, TVL.
// Space features are computed on the hygiene-filtered proposals, which makes
// the operation idempotent. Votes and contributions are restricted to the
// surviving entities.
CleanResult clean(const DatasetBundle& bundle, const std::map<std::string, double>& tvl_by_space);

}  // namespace daogov
