#include "strategy/validate.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_map>

#include "strategy/power.hpp"
#include "util/errors.hpp"

namespace daogov {

std::string to_string(VoteValidationStatus s) {
    switch (s) {
        case VoteValidationStatus::Consistent: return "consistent";
        case VoteValidationStatus::Corrected: return "corrected";
        case VoteValidationStatus::Mismatch: return "mismatch";
        case VoteValidationStatus::Indeterminate: return "indeterminate";
    }
    return "mismatch";
}

namespace {

// Token the mismatch report attributes an error to: the first erc20/erc721
// strategy token, or "eth".
std::string report_token(const Proposal& p) {
    for (const auto& st : p.strategies)
        if (st.token_address) return st.token_address->to_string();
    return "eth";
}

}  // namespace

std::uint64_t ValidationOutcome::count(VoteValidationStatus s) const {
    return static_cast<std::uint64_t>(
        std::count_if(votes.begin(), votes.end(),
                      [s](const VoteValidation& v) { return v.status == s; }));
}

ValidationOutcome validate(std::span<const Vote> votes, std::span<const Proposal> proposals,
                           const BalanceProvider& provider, double tolerance) {
    ValidationOutcome out;
    std::unordered_map<std::string, const Proposal*> by_id;
    for (const auto& p : proposals) by_id.emplace(p.id, &p);
    for (const auto& p : proposals)
        if (!all_strategies_supported(p)) out.unsupported_proposals.push_back(p.id);
    std::set<std::string> unsupported(out.unsupported_proposals.begin(),
                                      out.unsupported_proposals.end());

    auto close = [tolerance](double a, double b) { return std::abs(a - b) < tolerance; };

    std::map<std::tuple<std::string, std::string, std::string>, std::uint64_t> table;
    std::set<std::string> spaces_seen, spaces_dirty;

    for (const Vote& v : votes) {
        auto pit = by_id.find(v.proposal);
        if (pit == by_id.end()) throw LookupError("vote references unknown proposal " + v.proposal);
        const Proposal& p = *pit->second;
        if (unsupported.contains(p.id)) continue;
        spaces_seen.insert(p.space);

        VoteValidation vv;
        vv.proposal = p.id;
        vv.user = v.user;
        vv.reported = v.reported_weight;
        try {
            vv.recomputed = compute_power(v.user, p.strategies, provider, p.block_height,
                                          DecimalsPolicy::StrategyThenContractThenZero);
            if (close(vv.recomputed, vv.reported)) {
                vv.status = VoteValidationStatus::Consistent;
            } else {
                // correction solutions, first success wins
                double s1 = compute_power(v.user, p.strategies, provider, p.block_height,
                                          DecimalsPolicy::ContractThenZero);
                double s2 = compute_power(v.user, p.strategies, provider, p.block_height,
                                          DecimalsPolicy::ContractThenEighteen);
                double s4 = compute_power(v.user, p.strategies, provider, p.block_height,
                                          DecimalsPolicy::ForceEighteen);
                bool log_ok = vv.recomputed > 0.0 && vv.reported > 0.0 &&
                              close(std::log10(vv.recomputed), std::log10(vv.reported));
                if (close(s1, vv.reported)) {
                    vv.status = VoteValidationStatus::Corrected;
                    vv.solution = 1;
                } else if (close(s2, vv.reported)) {
                    vv.status = VoteValidationStatus::Corrected;
                    vv.solution = 2;
                } else if (log_ok) {
                    vv.status = VoteValidationStatus::Corrected;
                    vv.solution = 3;
                } else if (close(s4, vv.reported)) {
                    vv.status = VoteValidationStatus::Corrected;
                    vv.solution = 4;
                } else {
                    vv.status = VoteValidationStatus::Mismatch;
                }
            }
        } catch (const TransportError&) {
            vv.status = VoteValidationStatus::Indeterminate;
        }

        if (vv.status == VoteValidationStatus::Corrected) {
            ++table[{p.space, report_token(p), std::to_string(vv.solution)}];
            ++out.mismatches_by_space[p.space];
            spaces_dirty.insert(p.space);
        } else if (vv.status == VoteValidationStatus::Mismatch) {
            ++table[{p.space, report_token(p), "unresolved"}];
            ++out.mismatches_by_space[p.space];
            spaces_dirty.insert(p.space);
        } else if (vv.status == VoteValidationStatus::Indeterminate) {
            spaces_dirty.insert(p.space);  // cannot call the space fully validated
        }
        out.votes.push_back(std::move(vv));
    }

    for (const auto& [key, count] : table)
        out.table.push_back({std::get<0>(key), std::get<1>(key), std::get<2>(key), count});
    std::sort(out.table.begin(), out.table.end(),
              [](const ValidationOutcome::TableRow& a, const ValidationOutcome::TableRow& b) {
                  return a.count != b.count ? a.count > b.count
                                            : std::tie(a.space, a.token, a.error_class) <
                                                  std::tie(b.space, b.token, b.error_class);
              });
    for (const auto& s : spaces_seen)
        if (!spaces_dirty.contains(s)) out.fully_validated_spaces.push_back(s);
    return out;
}

nlohmann::json ValidationOutcome::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : table)
        rows.push_back({{"space", r.space},
                        {"token", r.token},
                        {"error_class", r.error_class},
                        {"count", r.count}});
    nlohmann::json per_space = nlohmann::json::object();
    for (const auto& [space, n] : mismatches_by_space) per_space[space] = n;
    return nlohmann::json{
        {"votes_total", votes.size()},
        {"consistent", count(VoteValidationStatus::Consistent)},
        {"corrected", count(VoteValidationStatus::Corrected)},
        {"mismatch", count(VoteValidationStatus::Mismatch)},
        {"indeterminate", count(VoteValidationStatus::Indeterminate)},
        {"unsupported_proposals", unsupported_proposals},
        {"mismatch_table", rows},
        {"mismatches_by_space", per_space},
        {"fully_validated_spaces", fully_validated_spaces}};
}

}  // namespace daogov
