#include "strategy/power.hpp"

#include "util/errors.hpp"

namespace daogov {

namespace {

int resolve_erc20_decimals(const StrategySpec& st, const BalanceProvider& provider,
                           DecimalsPolicy policy) {
    switch (policy) {
        case DecimalsPolicy::StrategyThenContractThenZero:
            if (st.decimals) return *st.decimals;
            return provider.token_decimals(*st.token_address).value_or(0);
        case DecimalsPolicy::ContractThenZero:
            return provider.token_decimals(*st.token_address).value_or(0);
        case DecimalsPolicy::ContractThenEighteen:
            return provider.token_decimals(*st.token_address).value_or(18);
        case DecimalsPolicy::ForceEighteen:
            return 18;
    }
    return 0;
}

}  // namespace

bool all_strategies_supported(const Proposal& proposal) {
    for (const auto& st : proposal.strategies)
        if (!st.supported()) return false;
    return !proposal.strategies.empty();
}

double compute_power(const Address& voter, std::span<const StrategySpec> strategies,
                     const BalanceProvider& provider, std::uint64_t block_height,
                     DecimalsPolicy policy) {
    if (block_height == 0) throw ValidationError("block height must be positive");
    double total = 0.0;
    for (const auto& st : strategies) {
        switch (st.kind) {
            case StrategyKind::Erc20BalanceOf: {
                u128 raw = provider.balance(voter, Asset::erc(*st.token_address), block_height);
                total += scale_by_decimals(raw, resolve_erc20_decimals(st, provider, policy));
                break;
            }
            case StrategyKind::Erc721: {
                u128 raw = provider.balance(voter, Asset::erc(*st.token_address), block_height);
                total += scale_by_decimals(raw, 0);
                break;
            }
            case StrategyKind::EthBalance: {
                u128 wei = provider.balance(voter, Asset::eth(), block_height);
                total += scale_by_decimals(wei, 18);
                break;
            }
            case StrategyKind::Other:
                throw UnsupportedStrategyError("unsupported strategy '" + st.other_name + "'");
        }
    }
    return total;
}

double compute_power(const Vote& vote, const Proposal& proposal, const BalanceProvider& provider,
                     std::uint64_t block_height) {
    return compute_power(vote.user, proposal.strategies, provider, block_height);
}

}  // namespace daogov
