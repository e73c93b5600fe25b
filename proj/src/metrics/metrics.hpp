#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "model/types.hpp"

namespace daogov {

struct NormalizedVote {
    Address user;
    VoteChoice choice;
    double w_tilde = 0.0;  // weight / proposal total, in [0,1]
    VoteClass cls = VoteClass::NonContributor;
};

// One proposal prepared for the per-space metrics: normalized weights,
// contributor classification, and the ranked outcome.
struct NormalizedProposal {
    std::string proposal_id;
    std::string space;
    std::uint32_t n_options = 0;
    bool degenerate = false;  // zero total weight; excluded from all metrics
    double total_weight = 0.0;
    std::vector<NormalizedVote> votes;
    Outcome outcome;
};

struct NormalizeResult {
    std::vector<NormalizedVote> votes;
    bool degenerate = false;
    double total_weight = 0.0;
};

// w~_i = w_i / sum(w). A zero-total proposal is marked degenerate instead of
// dividing by zero. Throws ValidationError on negative weights.
NormalizeResult normalize_proposal(std::span<const Vote> votes);

// Bundles normalization, classification, and outcome ranking for one
// proposal's votes.
NormalizedProposal prepare_proposal(const Proposal& proposal, std::span<const Vote> votes,
                                    const ContributionIndex& contributions);

struct SpaceInvolvement {
    std::string space;
    double mean = 0.0;
    double median = 0.0;
    std::optional<double> std_dev;  // sample std; absent for a single proposal
    double min = 0.0;
    double max = 0.0;
    std::uint64_t n_proposals = 0;
};

// Mean (and distribution stats) of the contributors' share of normalized
// voting power across a space's non-degenerate proposals. Throws
// ValidationError when no usable proposal exists.
SpaceInvolvement contributor_involvement(const std::string& space,
                                         std::span<const NormalizedProposal> proposals);

struct SelfDecisionScore {
    std::string space;
    double delta = 0.0;          // n_decided / n_proposals
    std::uint64_t n_decided = 0;
    std::uint64_t n_proposals = 0;       // proposals entering the evaluation
    std::uint64_t n_excluded_ties = 0;   // top-tie proposals, reported not guessed
    std::uint64_t n_excluded_other = 0;  // degenerate or single-option
};

// A proposal counts as a contributor self-decision when same-space
// contributor weight within the winning option strictly exceeds both the rest
// of the winning option and the runner-up option.
SelfDecisionScore self_decisions(const std::string& space,
                                 std::span<const NormalizedProposal> proposals);

struct OtherDecisionFlag {
    std::string proposal_id;
    bool flagged = false;
    double w_decisive_other = 0.0;  // other-space weight in the winning option
    double w_complement = 0.0;      // remaining winning-option weight
    double w_same_second = 0.0;     // same-space weight on the runner-up
};

// Flags proposals where other-space contributors dominate the decision while
// same-space contributors backed the runner-up.
std::vector<OtherDecisionFlag> other_decisions(const std::string& space,
                                               std::span<const NormalizedProposal> proposals);

}  // namespace daogov
