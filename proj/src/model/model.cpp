#include "model/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "util/errors.hpp"

namespace daogov {

StrategyKind StrategySpec::kind_from_string(const std::string& s) {
    if (s == "erc20-balance-of") return StrategyKind::Erc20BalanceOf;
    if (s == "erc721") return StrategyKind::Erc721;
    if (s == "eth-balance") return StrategyKind::EthBalance;
    return StrategyKind::Other;
}

std::string StrategySpec::kind_string() const {
    switch (kind) {
        case StrategyKind::Erc20BalanceOf: return "erc20-balance-of";
        case StrategyKind::Erc721: return "erc721";
        case StrategyKind::EthBalance: return "eth-balance";
        case StrategyKind::Other: return other_name;
    }
    return other_name;
}

Role RoleSet::role_from_string(const std::string& s) {
    if (s == "owner") return Role::Owner;
    if (s == "administrator") return Role::Administrator;
    if (s == "developer") return Role::Developer;
    throw ParseError("unknown role: '" + s + "'");
}

std::vector<std::string> RoleSet::names() const {
    std::vector<std::string> out;
    if (has(Role::Owner)) out.push_back("owner");
    if (has(Role::Administrator)) out.push_back("administrator");
    if (has(Role::Developer)) out.push_back("developer");
    return out;
}

ProposalStatus proposal_status_from_string(const std::string& s) {
    if (s == "pending") return ProposalStatus::Pending;
    if (s == "final") return ProposalStatus::Final;
    if (s == "invalid") return ProposalStatus::Invalid;
    throw ParseError("unknown proposal status: '" + s + "'");
}

std::string to_string(ProposalStatus s) {
    switch (s) {
        case ProposalStatus::Pending: return "pending";
        case ProposalStatus::Final: return "final";
        case ProposalStatus::Invalid: return "invalid";
    }
    return "pending";
}

std::string to_string(VoteClass c) {
    switch (c) {
        case VoteClass::SameSpace: return "same-space";
        case VoteClass::OtherSpace: return "other-space";
        case VoteClass::NonContributor: return "non-contributor";
    }
    return "non-contributor";
}

void VoteChoice::validate(std::uint32_t n_options, const std::string& who) const {
    if (is_single()) {
        if (single_index() >= n_options)
            throw ValidationError("vote " + who + ": option index " +
                                  std::to_string(single_index()) + " out of range (" +
                                  std::to_string(n_options) + " options)");
        return;
    }
    const auto& m = magnitudes();
    if (m.size() != n_options)
        throw ValidationError("vote " + who + ": magnitude vector has " +
                              std::to_string(m.size()) + " components, proposal has " +
                              std::to_string(n_options) + " options");
    double sum = 0.0;
    for (double v : m) {
        if (!(v >= 0.0) || !std::isfinite(v))
            throw ValidationError("vote " + who + ": negative or non-finite magnitude");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw ValidationError("vote " + who + ": magnitudes sum to " + std::to_string(sum) +
                              ", expected 1");
}

ContributionIndex::ContributionIndex(std::span<const Contribution> contributions) {
    for (const auto& c : contributions) spaces_by_user_[c.user].insert(c.space);
}

bool ContributionIndex::is_contributor(const Address& user) const {
    return spaces_by_user_.contains(user);
}

bool ContributionIndex::contributes_to(const Address& user, const std::string& space) const {
    auto it = spaces_by_user_.find(user);
    return it != spaces_by_user_.end() && it->second.contains(space);
}

VoteClass classify_vote(const Vote& vote, const ContributionIndex& contributions,
                        const std::string& proposal_space) {
    if (contributions.contributes_to(vote.user, proposal_space)) return VoteClass::SameSpace;
    if (contributions.is_contributor(vote.user)) return VoteClass::OtherSpace;
    return VoteClass::NonContributor;
}

Outcome rank_outcome(std::span<const Vote> votes_for_proposal, std::uint32_t n_options) {
    std::vector<double> totals(n_options, 0.0);
    for (const Vote& v : votes_for_proposal) {
        if (!(v.reported_weight >= 0.0) || !std::isfinite(v.reported_weight))
            throw ValidationError("vote " + v.user.to_string() + " on " + v.proposal +
                                  ": negative or non-finite weight");
        v.choice.validate(n_options, v.user.to_string() + " on " + v.proposal);
        if (v.choice.is_single()) {
            totals[v.choice.single_index()] += v.reported_weight;
        } else {
            const auto& m = v.choice.magnitudes();
            for (std::uint32_t i = 0; i < n_options; ++i) totals[i] += v.reported_weight * m[i];
        }
    }

    Outcome out;
    out.ranked_options.resize(n_options);
    std::iota(out.ranked_options.begin(), out.ranked_options.end(), 0u);
    std::sort(out.ranked_options.begin(), out.ranked_options.end(),
              [&](std::uint32_t a, std::uint32_t b) {
                  if (totals[a] != totals[b]) return totals[a] > totals[b];
                  return a < b;
              });
    out.weights.reserve(n_options);
    for (std::uint32_t o : out.ranked_options) out.weights.push_back(totals[o]);

    if (n_options >= 2) {
        double hi = out.weights[0], second = out.weights[1];
        double scale = std::max(std::abs(hi), std::abs(second));
        out.tie_at_top = std::abs(hi - second) <= 1e-12 * scale;
    }
    return out;
}

}  // namespace daogov
