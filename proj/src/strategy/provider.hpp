#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "util/address.hpp"
#include "util/u128.hpp"

namespace daogov {

// Native ether or a token contract.
struct Asset {
    bool native = false;
    Address token;

    static Asset eth() { return Asset{true, {}}; }
    static Asset erc(const Address& a) { return Asset{false, a}; }
    static Asset parse(const std::string& s);  // "eth" or a hex address
    std::string to_string() const { return native ? "eth" : token.to_string(); }

    auto operator<=>(const Asset&) const = default;
};

// Deterministic read-only view of chain balances: the same
// (account, asset, height) always yields the same value.
class BalanceProvider {
public:
    virtual ~BalanceProvider() = default;
    // Raw integer balance (wei / smallest token unit). Throws TransportError
    // on retrieval failure.
    virtual u128 balance(const Address& account, const Asset& asset,
                         std::uint64_t block_height) const = 0;
    // Decimals as published by the token contract, if any.
    virtual std::optional<int> token_decimals(const Address& token) const = 0;
};

// File-backed provider for deterministic runs and tests. Balance records are
// a step function over block heights: a record holds from its block_height
// until the next record for the same (account, asset); accounts without
// records hold zero. Records flagged "error": true simulate provider gaps.
//
// JSON-Lines schema:
//   {"account": "0x..", "asset": "eth"|"0x..", "block_height": N,
//    "raw_balance": "123456"}            (raw_balance also accepts a number)
//   {"asset": "0x..", "decimals": 18}
//   {"account": "0x..", "asset": "..", "block_height": N, "error": true}
class FixtureBalanceProvider : public BalanceProvider {
public:
    FixtureBalanceProvider() = default;
    static FixtureBalanceProvider load(const std::filesystem::path& jsonl_path);

    void set_balance(const Address& account, const Asset& asset, std::uint64_t from_block,
                     u128 raw_balance);
    void set_error(const Address& account, const Asset& asset, std::uint64_t from_block);
    void set_decimals(const Address& token, int decimals);

    u128 balance(const Address& account, const Asset& asset,
                 std::uint64_t block_height) const override;
    std::optional<int> token_decimals(const Address& token) const override;

private:
    struct Entry {
        u128 raw = 0;
        bool error = false;
    };
    // (account, asset) -> block -> entry; std::map gives the step lookup
    std::map<std::pair<Address, Asset>, std::map<std::uint64_t, Entry>> balances_;
    std::map<Address, int> decimals_;
};

}  // namespace daogov
