#include "ingest/clean.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>
#include <unordered_set>

namespace daogov {

namespace {

constexpr double kMinTvlUsd = 100000.0;
constexpr std::size_t kTopRank = 500;
constexpr std::uint64_t kVotesPerProposalCut = 10;  // "more than ten votes"
constexpr double kScoreTolerance = 1e-6;            // relative

bool scores_consistent(const Proposal& p, const std::vector<double>& summed) {
    if (p.reported_scores.empty()) return true;  // nothing reported, nothing to contradict
    if (p.reported_scores.size() != summed.size()) return false;
    for (std::size_t i = 0; i < summed.size(); ++i) {
        double a = summed[i], b = p.reported_scores[i];
        double scale = std::max(std::abs(a), std::abs(b));
        if (std::abs(a - b) > kScoreTolerance * scale) return false;
    }
    return true;
}

// Competition ranking, ties inclusive: rank = 1 + |{t : f(t) > f(s)}|.
std::vector<bool> in_top_rank(const std::vector<double>& values, std::size_t cutoff) {
    std::vector<double> sorted = values;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // value at the cutoff boundary; everything >= it is within the cutoff
    double boundary = cutoff <= sorted.size() && cutoff > 0 ? sorted[cutoff - 1]
                                                           : -std::numeric_limits<double>::infinity();
    std::vector<bool> keep(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) keep[i] = values[i] >= boundary;
    return keep;
}

}  // namespace

nlohmann::json CleaningReport::to_json() const {
    return nlohmann::json{
        {"spaces",
         {{"before", spaces_before},
          {"removed", {{"immature", spaces_removed_immature}}},
          {"after", spaces_after}}},
        {"proposals",
         {{"before", proposals_before},
          {"removed",
           {{"non_final", proposals_removed_non_final},
            {"non_single_choice", proposals_removed_non_single_choice},
            {"score_inconsistent", proposals_removed_score_inconsistent},
            {"space_dropped", proposals_removed_space_dropped}}},
          {"after", proposals_after}}},
        {"votes",
         {{"before", votes_before},
          {"removed",
           {{"proposal_dropped", votes_removed_proposal_dropped},
            {"space_dropped", votes_removed_space_dropped}}},
          {"after", votes_after}}},
        {"contributions",
         {{"before", contributions_before},
          {"removed", {{"space_dropped", contributions_removed_space_dropped}}},
          {"after", contributions_after}}}};
}

CleanResult clean(const DatasetBundle& bundle, const std::map<std::string, double>& tvl_by_space) {
    CleanResult res;
    CleaningReport& rep = res.report;
    rep.spaces_before = bundle.spaces.size();
    rep.proposals_before = bundle.proposals.size();
    rep.votes_before = bundle.votes.size();
    rep.contributions_before = bundle.contributions.size();

    // Proposal hygiene. Each proposal is counted against the first rule that
    // rejects it.
    std::unordered_map<std::string, std::vector<double>> summed_scores;
    for (const auto& p : bundle.proposals) summed_scores.emplace(p.id, std::vector<double>(p.options.size(), 0.0));
    for (const auto& v : bundle.votes) {
        auto& totals = summed_scores.at(v.proposal);
        for (std::uint32_t i = 0; i < totals.size(); ++i)
            totals[i] += v.reported_weight * v.choice.mass_on(i);
    }

    std::unordered_set<std::string> kept_proposals;
    for (const auto& p : bundle.proposals) {
        if (p.status != ProposalStatus::Final) {
            ++rep.proposals_removed_non_final;
            continue;
        }
        if (p.vote_type != "single-choice") {
            ++rep.proposals_removed_non_single_choice;
            continue;
        }
        if (!scores_consistent(p, summed_scores.at(p.id))) {
            ++rep.proposals_removed_score_inconsistent;
            continue;
        }
        kept_proposals.insert(p.id);
    }

    // Space features over the hygiene-filtered proposals.
    std::unordered_map<std::string, std::uint64_t> votes_per_proposal;
    for (const auto& v : bundle.votes)
        if (kept_proposals.contains(v.proposal)) ++votes_per_proposal[v.proposal];

    struct Features {
        double n_proposals = 0;
        double n_popular_proposals = 0;  // more than ten votes
        double followers = 0;
        double tvl = 0;
    };
    std::unordered_map<std::string, Features> features;
    for (const auto& s : bundle.spaces) {
        Features f;
        f.followers = static_cast<double>(s.follower_count);
        if (auto it = tvl_by_space.find(s.id); it != tvl_by_space.end())
            f.tvl = it->second;
        else if (s.tvl_usd)
            f.tvl = *s.tvl_usd;
        features.emplace(s.id, f);
    }
    for (const auto& p : bundle.proposals) {
        if (!kept_proposals.contains(p.id)) continue;
        auto& f = features.at(p.space);
        f.n_proposals += 1;
        auto it = votes_per_proposal.find(p.id);
        if (it != votes_per_proposal.end() && it->second > kVotesPerProposalCut)
            f.n_popular_proposals += 1;
    }

    std::vector<double> f1, f2, f3, f4;
    for (const auto& s : bundle.spaces) {
        const Features& f = features.at(s.id);
        f1.push_back(f.n_proposals);
        f2.push_back(f.n_popular_proposals);
        f3.push_back(f.followers);
        f4.push_back(f.tvl);
    }
    auto top1 = in_top_rank(f1, kTopRank);
    auto top2 = in_top_rank(f2, kTopRank);
    auto top3 = in_top_rank(f3, kTopRank);
    auto top4 = in_top_rank(f4, kTopRank);

    std::unordered_set<std::string> kept_spaces;
    for (std::size_t i = 0; i < bundle.spaces.size(); ++i) {
        const auto& s = bundle.spaces[i];
        bool tvl_ok = features.at(s.id).tvl >= kMinTvlUsd;
        bool ranked = top1[i] || top2[i] || top3[i] || top4[i];
        if (tvl_ok || ranked) {
            kept_spaces.insert(s.id);
            res.bundle.spaces.push_back(s);
        } else {
            ++rep.spaces_removed_immature;
        }
    }

    // Cascade: restrict proposals, votes, and contributions to survivors.
    std::unordered_set<std::string> final_proposals;
    for (const auto& p : bundle.proposals) {
        if (!kept_proposals.contains(p.id)) continue;
        if (!kept_spaces.contains(p.space)) {
            ++rep.proposals_removed_space_dropped;
            continue;
        }
        final_proposals.insert(p.id);
        res.bundle.proposals.push_back(p);
    }
    for (const auto& v : bundle.votes) {
        if (final_proposals.contains(v.proposal)) {
            res.bundle.votes.push_back(v);
        } else if (kept_proposals.contains(v.proposal)) {
            ++rep.votes_removed_space_dropped;  // proposal fine, its space dropped
        } else {
            ++rep.votes_removed_proposal_dropped;
        }
    }
    for (const auto& c : bundle.contributions) {
        if (kept_spaces.contains(c.space))
            res.bundle.contributions.push_back(c);
        else
            ++rep.contributions_removed_space_dropped;
    }
    res.bundle.tvl_records = bundle.tvl_records;

    rep.spaces_after = res.bundle.spaces.size();
    rep.proposals_after = res.bundle.proposals.size();
    rep.votes_after = res.bundle.votes.size();
    rep.contributions_after = res.bundle.contributions.size();
    return res;
}

}  // namespace daogov
