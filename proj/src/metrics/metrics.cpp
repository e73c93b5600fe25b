#include "metrics/metrics.hpp"

#include <algorithm>
#include <cmath>

#include "util/errors.hpp"

namespace daogov {

NormalizeResult normalize_proposal(std::span<const Vote> votes) {
    NormalizeResult res;
    double total = 0.0;
    for (const Vote& v : votes) {
        if (!(v.reported_weight >= 0.0) || !std::isfinite(v.reported_weight))
            throw ValidationError("vote " + v.user.to_string() + " on " + v.proposal +
                                  ": negative or non-finite weight");
        total += v.reported_weight;
    }
    res.total_weight = total;
    if (total <= 0.0) {
        res.degenerate = true;
        return res;
    }
    res.votes.reserve(votes.size());
    for (const Vote& v : votes)
        res.votes.push_back({v.user, v.choice, v.reported_weight / total,
                             VoteClass::NonContributor});
    return res;
}

NormalizedProposal prepare_proposal(const Proposal& proposal, std::span<const Vote> votes,
                                    const ContributionIndex& contributions) {
    NormalizedProposal np;
    np.proposal_id = proposal.id;
    np.space = proposal.space;
    np.n_options = proposal.n_options();

    NormalizeResult norm = normalize_proposal(votes);
    np.degenerate = norm.degenerate;
    np.total_weight = norm.total_weight;
    np.votes = std::move(norm.votes);
    for (std::size_t i = 0; i < np.votes.size(); ++i)
        np.votes[i].cls = classify_vote(votes[i], contributions, proposal.space);
    np.outcome = rank_outcome(votes, proposal.n_options());
    return np;
}

namespace {

double contributor_share(const NormalizedProposal& p) {
    double share = 0.0;
    for (const auto& v : p.votes)
        if (v.cls != VoteClass::NonContributor) share += v.w_tilde;
    return share;
}

// Normalized weight the given class put on `option`, magnitude votes counted
// by the fraction of the vote addressed to that option.
double class_mass_on_option(const NormalizedProposal& p, std::uint32_t option, VoteClass cls,
                            bool invert) {
    double mass = 0.0;
    for (const auto& v : p.votes)
        if ((v.cls == cls) != invert) mass += v.w_tilde * v.choice.mass_on(option);
    return mass;
}

}  // namespace

SpaceInvolvement contributor_involvement(const std::string& space,
                                         std::span<const NormalizedProposal> proposals) {
    std::vector<double> shares;
    for (const auto& p : proposals) {
        if (p.space != space || p.degenerate) continue;
        shares.push_back(contributor_share(p));
    }
    if (shares.empty())
        throw ValidationError("space " + space + ": no non-degenerate proposals to average");

    SpaceInvolvement inv;
    inv.space = space;
    inv.n_proposals = shares.size();
    double sum = 0.0;
    inv.min = shares.front();
    inv.max = shares.front();
    for (double s : shares) {
        sum += s;
        inv.min = std::min(inv.min, s);
        inv.max = std::max(inv.max, s);
    }
    inv.mean = sum / static_cast<double>(shares.size());

    std::sort(shares.begin(), shares.end());
    std::size_t n = shares.size();
    inv.median = n % 2 == 1 ? shares[n / 2] : 0.5 * (shares[n / 2 - 1] + shares[n / 2]);

    if (n >= 2) {
        double ss = 0.0;
        for (double s : shares) ss += (s - inv.mean) * (s - inv.mean);
        inv.std_dev = std::sqrt(ss / static_cast<double>(n - 1));
    }
    return inv;
}

SelfDecisionScore self_decisions(const std::string& space,
                                 std::span<const NormalizedProposal> proposals) {
    SelfDecisionScore score;
    score.space = space;
    for (const auto& p : proposals) {
        if (p.space != space) continue;
        if (p.degenerate || p.n_options < 2) {
            ++score.n_excluded_other;
            continue;
        }
        if (p.outcome.tie_at_top) {
            ++score.n_excluded_ties;
            continue;
        }
        ++score.n_proposals;
        std::uint32_t winner = p.outcome.decision();
        std::uint32_t second = *p.outcome.runner_up();
        double w_decisive = class_mass_on_option(p, winner, VoteClass::SameSpace, false);
        double w_complement = class_mass_on_option(p, winner, VoteClass::SameSpace, true);
        double w_second = class_mass_on_option(p, second, VoteClass::SameSpace, false) +
                          class_mass_on_option(p, second, VoteClass::SameSpace, true);
        if (w_decisive > w_complement && w_decisive > w_second) ++score.n_decided;
    }
    if (score.n_proposals > 0)
        score.delta =
            static_cast<double>(score.n_decided) / static_cast<double>(score.n_proposals);
    return score;
}

std::vector<OtherDecisionFlag> other_decisions(const std::string& space,
                                               std::span<const NormalizedProposal> proposals) {
    std::vector<OtherDecisionFlag> flags;
    for (const auto& p : proposals) {
        if (p.space != space) continue;
        if (p.degenerate || p.n_options < 2 || p.outcome.tie_at_top) continue;
        std::uint32_t winner = p.outcome.decision();
        std::uint32_t second = *p.outcome.runner_up();
        OtherDecisionFlag f;
        f.proposal_id = p.proposal_id;
        f.w_decisive_other = class_mass_on_option(p, winner, VoteClass::OtherSpace, false);
        f.w_complement = class_mass_on_option(p, winner, VoteClass::OtherSpace, true);
        f.w_same_second = class_mass_on_option(p, second, VoteClass::SameSpace, false);
        f.flagged = f.w_decisive_other > f.w_complement && f.w_decisive_other > f.w_same_second &&
                    f.w_same_second > 0.0;
        flags.push_back(std::move(f));
    }
    return flags;
}

}  // namespace daogov
