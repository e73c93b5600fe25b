#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "model/types.hpp"
#include "strategy/provider.hpp"

namespace daogov {

enum class VoteValidationStatus {
    Consistent,     // matches within the tolerance as published
    Corrected,      // matches after one of the four correction solutions
    Mismatch,       // no solution reconciles the values
    Indeterminate,  // provider failure; never counted as mismatch
};

std::string to_string(VoteValidationStatus s);

struct VoteValidation {
    std::string proposal;
    Address user;
    VoteValidationStatus status = VoteValidationStatus::Mismatch;
    int solution = 0;  // 1..4 when status == Corrected
    double reported = 0.0;
    double recomputed = 0.0;  // under the published decimals
};

struct ValidationOutcome {
    std::vector<VoteValidation> votes;  // votes of supported proposals only
    std::vector<std::string> unsupported_proposals;

    // (space, token, error class) -> count, the shape of the mismatch report;
    // classes are "1".."4" for corrected votes and "unresolved" for the rest.
    struct TableRow {
        std::string space;
        std::string token;
        std::string error_class;
        std::uint64_t count = 0;
    };
    std::vector<TableRow> table;

    std::map<std::string, std::uint64_t> mismatches_by_space;  // corrected + unresolved

    // Spaces whose supported proposals validated without any correction;
    // the shift analysis runs on these only.
    std::vector<std::string> fully_validated_spaces;

    std::uint64_t count(VoteValidationStatus s) const;
    nlohmann::json to_json() const;
};

// Recomputes every vote's power from chain balances at the proposal snapshot
// block and compares against the reported weight under |delta| < 1e-3.
// Failing votes retry the correction solutions in order: [1] contract
// decimals (0 if none), [2] contract decimals defaulting to 18, [3] log10
// comparison of both values (only when both positive), [4] decimals forced
// to 18. The first success tags the vote corrected(n).
ValidationOutcome validate(std::span<const Vote> votes, std::span<const Proposal> proposals,
                           const BalanceProvider& provider, double tolerance = 1e-3);

}  // namespace daogov
