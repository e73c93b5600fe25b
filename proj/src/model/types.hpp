#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <variant>
#include <vector>

#include "util/address.hpp"

namespace daogov {

// ---------------------------------------------------------------------------
// Voting-power strategies. Only the erc20 / erc721 / eth-balance families are
// recomputable; anything else is carried through as Other(name) and excluded
// from on-chain validation.

enum class StrategyKind { Erc20BalanceOf, Erc721, EthBalance, Other };

struct StrategySpec {
    StrategyKind kind = StrategyKind::Other;
    std::string other_name;                 // only for Other
    std::optional<Address> token_address;   // required for erc20/erc721
    std::optional<int> decimals;            // as published by the proposal

    static StrategyKind kind_from_string(const std::string& s);
    std::string kind_string() const;
    bool supported() const { return kind != StrategyKind::Other; }
};

// ---------------------------------------------------------------------------
// Entities

struct Space {
    std::string id;
    std::uint64_t follower_count = 0;
    std::optional<double> tvl_usd;
    std::vector<Address> token_accounts;  // sorted, unique
};

enum class Role : std::uint8_t { Owner = 1, Administrator = 2, Developer = 4 };

// Non-empty subset of {owner, administrator, developer}, stored as a mask.
struct RoleSet {
    std::uint8_t mask = 0;

    bool empty() const { return mask == 0; }
    bool has(Role r) const { return mask & static_cast<std::uint8_t>(r); }
    void add(Role r) { mask |= static_cast<std::uint8_t>(r); }
    void merge(RoleSet other) { mask |= other.mask; }
    std::vector<std::string> names() const;
    static Role role_from_string(const std::string& s);

    bool operator==(const RoleSet&) const = default;
};

// At most one record per (user, space); multiple roles merge into one set.
struct Contribution {
    Address user;
    std::string space;
    RoleSet roles;
};

enum class ProposalStatus { Pending, Final, Invalid };

ProposalStatus proposal_status_from_string(const std::string& s);
std::string to_string(ProposalStatus s);

struct Proposal {
    std::string id;
    std::string space;
    std::vector<std::string> options;  // 0-based option indices
    std::vector<StrategySpec> strategies;
    std::uint64_t block_height = 0;  // > 0
    ProposalStatus status = ProposalStatus::Pending;
    std::string vote_type;                // "single-choice" in the cleaned pipeline
    std::vector<double> reported_scores;  // per-option totals; may be empty

    std::uint32_t n_options() const { return static_cast<std::uint32_t>(options.size()); }
};

// A vote selects one option, or spreads its weight over all options with a
// magnitude vector (components >= 0, summing to 1 within 1e-9).
class VoteChoice {
public:
    VoteChoice() : value_(std::uint32_t{0}) {}
    explicit VoteChoice(std::uint32_t option) : value_(option) {}
    explicit VoteChoice(std::vector<double> magnitudes) : value_(std::move(magnitudes)) {}

    bool is_single() const { return std::holds_alternative<std::uint32_t>(value_); }
    std::uint32_t single_index() const { return std::get<std::uint32_t>(value_); }
    const std::vector<double>& magnitudes() const { return std::get<std::vector<double>>(value_); }

    // Fraction of the vote's weight allotted to `option`.
    double mass_on(std::uint32_t option) const {
        if (is_single()) return single_index() == option ? 1.0 : 0.0;
        const auto& m = magnitudes();
        return option < m.size() ? m[option] : 0.0;
    }

    // Checks index range / magnitude-sum invariants against a proposal.
    // Throws ValidationError naming `who` on violation.
    void validate(std::uint32_t n_options, const std::string& who) const;

    bool operator==(const VoteChoice&) const = default;

private:
    std::variant<std::uint32_t, std::vector<double>> value_;
};

struct Vote {
    Address user;
    std::string proposal;
    VoteChoice choice;
    double reported_weight = 0.0;  // >= 0, finite
    std::int64_t timestamp = 0;    // seconds since epoch
};

enum class VoteClass { SameSpace, OtherSpace, NonContributor };

std::string to_string(VoteClass c);

// Ranked outcome of a proposal: option indices sorted by aggregated voting
// power descending, exact ties broken by ascending index.
struct Outcome {
    std::vector<std::uint32_t> ranked_options;
    std::vector<double> weights;  // non-increasing, aligned with ranked_options
    bool tie_at_top = false;      // top two agree within 1e-12 relative

    std::uint32_t decision() const { return ranked_options.front(); }
    std::optional<std::uint32_t> runner_up() const {
        if (ranked_options.size() < 2) return std::nullopt;
        return ranked_options[1];
    }
};

// ---------------------------------------------------------------------------
// Operations

// user -> set of spaces contributed to; the lookup structure behind
// classify_vote. Duplicate (user, space) pairs merge.
class ContributionIndex {
public:
    ContributionIndex() = default;
    explicit ContributionIndex(std::span<const Contribution> contributions);

    bool is_contributor(const Address& user) const;
    bool contributes_to(const Address& user, const std::string& space) const;
    std::size_t contributor_count() const { return spaces_by_user_.size(); }

private:
    std::unordered_map<Address, std::unordered_set<std::string>, AddressHash> spaces_by_user_;
};

VoteClass classify_vote(const Vote& vote, const ContributionIndex& contributions,
                        const std::string& proposal_space);

// Aggregates reported weights per option (magnitude vectors distribute
// weight * m_i) and ranks descending. Throws ValidationError when a choice
// indexes out of range.
Outcome rank_outcome(std::span<const Vote> votes_for_proposal, std::uint32_t n_options);

}  // namespace daogov
