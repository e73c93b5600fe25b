#include "strategy/provider.hpp"

#include "util/errors.hpp"
#include "util/jsonl.hpp"

namespace daogov {

Asset Asset::parse(const std::string& s) {
    if (s == "eth") return eth();
    return erc(Address::parse(s));
}

FixtureBalanceProvider FixtureBalanceProvider::load(const std::filesystem::path& jsonl_path) {
    FixtureBalanceProvider p;
    for_each_jsonl(jsonl_path, [&](std::size_t lineno, const nlohmann::json& obj) {
        try {
            if (obj.contains("decimals")) {
                p.set_decimals(Address::parse(obj.at("asset").get<std::string>()),
                               obj.at("decimals").get<int>());
                return;
            }
            Address account = Address::parse(obj.at("account").get<std::string>());
            Asset asset = Asset::parse(obj.at("asset").get<std::string>());
            std::uint64_t block = obj.at("block_height").get<std::uint64_t>();
            if (obj.value("error", false)) {
                p.set_error(account, asset, block);
                return;
            }
            const auto& raw = obj.at("raw_balance");
            u128 value = raw.is_string() ? parse_u128(raw.get<std::string>())
                                         : static_cast<u128>(raw.get<std::uint64_t>());
            p.set_balance(account, asset, block, value);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(jsonl_path.filename().string() + ":" + std::to_string(lineno) +
                             ": " + e.what());
        }
    });
    return p;
}

void FixtureBalanceProvider::set_balance(const Address& account, const Asset& asset,
                                         std::uint64_t from_block, u128 raw_balance) {
    balances_[{account, asset}][from_block] = Entry{raw_balance, false};
}

void FixtureBalanceProvider::set_error(const Address& account, const Asset& asset,
                                       std::uint64_t from_block) {
    balances_[{account, asset}][from_block] = Entry{0, true};
}

void FixtureBalanceProvider::set_decimals(const Address& token, int decimals) {
    decimals_[token] = decimals;
}

u128 FixtureBalanceProvider::balance(const Address& account, const Asset& asset,
                                     std::uint64_t block_height) const {
    auto it = balances_.find({account, asset});
    if (it == balances_.end()) return 0;
    const auto& steps = it->second;
    auto sit = steps.upper_bound(block_height);
    if (sit == steps.begin()) return 0;  // before the first record
    --sit;
    if (sit->second.error)
        throw TransportError("fixture gap for " + account.to_string() + " / " +
                             asset.to_string() + " at block " + std::to_string(block_height));
    return sit->second.raw;
}

std::optional<int> FixtureBalanceProvider::token_decimals(const Address& token) const {
    auto it = decimals_.find(token);
    if (it == decimals_.end()) return std::nullopt;
    return it->second;
}

}  // namespace daogov
