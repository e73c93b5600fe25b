#pragma once

#include <memory>
#include <string>

#include "json.hpp"
#include "strategy/provider.hpp"

namespace daogov {

// JSON-RPC client against an Ethereum archive node: eth_call for
// balanceOf(address) and decimals(), eth_getBalance for native ether, all at
// an explicit block height. The endpoint comes from configuration, never a
// built-in default. Every failure surfaces as TransportError (retryable).
class RpcBalanceProvider : public BalanceProvider {
public:
    explicit RpcBalanceProvider(std::string endpoint, int timeout_seconds = 30);
    ~RpcBalanceProvider() override;

    u128 balance(const Address& account, const Asset& asset,
                 std::uint64_t block_height) const override;
    std::optional<int> token_decimals(const Address& token) const override;

private:
    std::string rpc_call(const std::string& method, const nlohmann::json& params) const;

    struct Impl;
    std::unique_ptr<Impl> impl_;
};

}  // namespace daogov
