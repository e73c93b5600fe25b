#include "shift/shift.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "strategy/power.hpp"
#include "util/errors.hpp"

namespace daogov {

std::optional<std::uint64_t> sample_block(std::uint64_t h_tau, std::uint32_t days_back) {
    std::uint64_t offset = kBlocksPerDay * days_back;
    if (offset >= h_tau) return std::nullopt;  // block heights are positive
    return h_tau - offset;
}

ShiftSeries detect_shifts(const Proposal& proposal, std::span<const Vote> votes,
                          const BalanceProvider& provider, std::uint32_t lookback_days,
                          const ContributionIndex* contributions) {
    ShiftSeries s;
    s.proposal_id = proposal.id;
    s.space = proposal.space;
    s.lookback = lookback_days;
    s.decision_by_day.assign(lookback_days + 1, std::nullopt);

    // Revotes collapse to the latest choice; the voter set itself is fixed,
    // voters whose historical balance is zero stay in the poll with weight 0.
    std::unordered_map<Address, std::pair<std::int64_t, VoteChoice>, AddressHash> latest;
    for (const Vote& v : votes) {
        if (v.proposal != proposal.id)
            throw ValidationError("vote for " + v.proposal + " passed to replay of " + proposal.id);
        auto it = latest.find(v.user);
        if (it == latest.end() || v.timestamp >= it->second.first)
            latest[v.user] = {v.timestamp, v.choice};
    }
    std::vector<Vote> electorate;
    electorate.reserve(latest.size());
    for (const auto& [user, tc] : latest) {
        Vote v;
        v.user = user;
        v.proposal = proposal.id;
        v.choice = tc.second;
        v.timestamp = tc.first;
        electorate.push_back(std::move(v));
        if (contributions && contributions->is_contributor(user)) s.contributor_voted = true;
    }
    std::sort(electorate.begin(), electorate.end(),
              [](const Vote& a, const Vote& b) { return a.user < b.user; });

    for (std::uint32_t t = 0; t <= lookback_days; ++t) {
        auto block = sample_block(proposal.block_height, t);
        if (!block) {
            s.truncated = true;
            continue;
        }
        bool gap = false;
        for (auto& v : electorate) {
            try {
                v.reported_weight = compute_power(v.user, proposal.strategies, provider, *block);
            } catch (const TransportError&) {
                gap = true;
                break;
            }
        }
        if (gap) {
            ++s.indeterminate_days;
            continue;
        }
        Outcome outcome = rank_outcome(electorate, proposal.n_options());
        s.decision_by_day[t] = outcome.decision();
    }

    for (std::uint32_t t = 0; t < lookback_days; ++t) {
        const auto& closer = s.decision_by_day[t];
        const auto& farther = s.decision_by_day[t + 1];
        if (closer && farther && *closer != *farther) s.shift_days.push_back(t);
    }
    s.n_shifts = static_cast<std::uint32_t>(s.shift_days.size());
    return s;
}

std::vector<std::uint64_t> aggregate_shifts(std::span<const ShiftSeries> series,
                                            std::uint32_t lookback_days) {
    std::vector<std::uint64_t> hist(lookback_days, 0);
    for (const auto& s : series)
        for (std::uint32_t day : s.shift_days)
            if (day < lookback_days) ++hist[day];
    return hist;
}

ShiftSummary summarize_shifts(std::span<const ShiftSeries> series) {
    ShiftSummary sum;
    sum.n_proposals = series.size();
    if (series.empty()) return sum;
    std::vector<double> counts;
    counts.reserve(series.size());
    double total = 0.0;
    for (const auto& s : series) {
        counts.push_back(s.n_shifts);
        total += s.n_shifts;
        sum.max_shifts = std::max<std::uint64_t>(sum.max_shifts, s.n_shifts);
        if (s.n_shifts > 0) ++sum.proposals_with_shift;
    }
    std::sort(counts.begin(), counts.end());
    std::size_t n = counts.size();
    sum.median_shifts = n % 2 == 1 ? counts[n / 2] : 0.5 * (counts[n / 2 - 1] + counts[n / 2]);
    double mean = total / static_cast<double>(n);
    double ss = 0.0;
    for (double c : counts) ss += (c - mean) * (c - mean);
    sum.std_shifts = n >= 2 ? std::sqrt(ss / static_cast<double>(n - 1)) : 0.0;
    return sum;
}

nlohmann::json ShiftSeries::to_json() const {
    nlohmann::json days = nlohmann::json::array();
    for (const auto& d : decision_by_day) {
        if (d)
            days.push_back(*d);
        else
            days.push_back(nullptr);
    }
    return nlohmann::json{{"proposal", proposal_id},
                          {"space", space},
                          {"lookback", lookback},
                          {"decision_by_day", std::move(days)},
                          {"shift_days", shift_days},
                          {"n_shifts", n_shifts},
                          {"truncated", truncated},
                          {"indeterminate_days", indeterminate_days},
                          {"contributor_voted", contributor_voted}};
}

}  // namespace daogov
