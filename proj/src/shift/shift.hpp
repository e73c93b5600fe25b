#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "model/types.hpp"
#include "strategy/provider.hpp"

namespace daogov {

// Days are approximated as 86400 / 15 blocks.
constexpr std::uint64_t kBlocksPerDay = 86400 / 15;

// Block representative of the t-th day before h_tau; nullopt when the chain
// history is shorter than the lookback (truncated series, not a failure).
std::optional<std::uint64_t> sample_block(std::uint64_t h_tau, std::uint32_t days_back);

struct ShiftSeries {
    std::string proposal_id;
    std::string space;
    std::uint32_t lookback = 0;

    // decision_by_day[t] = hypothetical winning option on the t-th day before
    // the poll; nullopt marks truncated or indeterminate (provider gap) days.
    std::vector<std::optional<std::uint32_t>> decision_by_day;  // size lookback + 1
    std::vector<std::uint32_t> shift_days;                      // ascending, within [0, lookback)
    std::uint32_t n_shifts = 0;
    bool truncated = false;
    std::uint32_t indeterminate_days = 0;
    bool contributor_voted = false;

    nlohmann::json to_json() const;
};

// Replays every voter's power at daily sampled blocks over the lookback
// window, holding the chosen options fixed, and records the days where the
// hypothetical decision differs from the previous sampled day. A shift
// between days t+1 and t is labelled at t, the day closer to the poll.
// Days with provider gaps drop out of the adjacent-pair comparisons instead
// of being bridged, so the count is a lower bound.
ShiftSeries detect_shifts(const Proposal& proposal, std::span<const Vote> votes,
                          const BalanceProvider& provider, std::uint32_t lookback_days,
                          const ContributionIndex* contributions = nullptr);

// Histogram of shift occurrences per day offset, summed across proposals.
std::vector<std::uint64_t> aggregate_shifts(std::span<const ShiftSeries> series,
                                            std::uint32_t lookback_days);

struct ShiftSummary {
    std::uint64_t n_proposals = 0;
    std::uint64_t proposals_with_shift = 0;
    double median_shifts = 0.0;
    double std_shifts = 0.0;
    std::uint64_t max_shifts = 0;
};

ShiftSummary summarize_shifts(std::span<const ShiftSeries> series);

}  // namespace daogov
