#pragma once

#include <cstdint>
#include <span>

#include "model/types.hpp"
#include "strategy/provider.hpp"

namespace daogov {

// How erc20 decimals are resolved when recomputing voting power. The
// published strategy decimals are the default; the correction solutions of
// the validator substitute the contract decimals or force 18.
enum class DecimalsPolicy {
    StrategyThenContractThenZero,  // published value, else contract, else 0
    ContractThenZero,              // solution 1
    ContractThenEighteen,          // solution 2
    ForceEighteen,                 // solution 4
};

// Voting power of one account under one strategy ruleset at a block height:
// the sum over strategies of the converted balance (erc20: raw / 10^decimals;
// erc721: raw count; eth: wei / 10^18). Throws UnsupportedStrategyError for
// strategies outside the supported families and TransportError on provider
// failure.
double compute_power(const Address& voter, std::span<const StrategySpec> strategies,
                     const BalanceProvider& provider, std::uint64_t block_height,
                     DecimalsPolicy policy = DecimalsPolicy::StrategyThenContractThenZero);

double compute_power(const Vote& vote, const Proposal& proposal, const BalanceProvider& provider,
                     std::uint64_t block_height);

bool all_strategies_supported(const Proposal& proposal);

}  // namespace daogov
