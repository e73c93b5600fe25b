#include "strategy/rpc_provider.hpp"

#include <cstdio>
#include <mutex>

#include "httplib.h"
#include "json.hpp"
#include "util/errors.hpp"

namespace daogov {

namespace {

constexpr const char* kBalanceOfSelector = "0x70a08231";  // balanceOf(address)
constexpr const char* kDecimalsSelector = "0x313ce567";   // decimals()

std::string block_tag(std::uint64_t height) {
    char buf[20];
    std::snprintf(buf, sizeof buf, "0x%llx", static_cast<unsigned long long>(height));
    return buf;
}

std::string padded_address(const Address& a) {
    // 32-byte ABI word: 12 zero bytes then the address
    std::string hex = a.to_string().substr(2);
    return std::string(24, '0') + hex;
}

// Splits "http(s)://host[:port]" from the path part.
std::pair<std::string, std::string> split_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    std::size_t path_start = scheme_end == std::string::npos
                                 ? endpoint.find('/')
                                 : endpoint.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {endpoint, "/"};
    return {endpoint.substr(0, path_start), endpoint.substr(path_start)};
}

}  // namespace

struct RpcBalanceProvider::Impl {
    std::string endpoint;
    std::string host;
    std::string path;
    int timeout_seconds;
    mutable std::mutex mu;
    mutable std::uint64_t next_id = 1;
};

RpcBalanceProvider::RpcBalanceProvider(std::string endpoint, int timeout_seconds)
    : impl_(std::make_unique<Impl>()) {
    if (endpoint.empty()) throw ConfigError("rpc provider requires an endpoint");
    impl_->endpoint = std::move(endpoint);
    auto [host, path] = split_endpoint(impl_->endpoint);
    impl_->host = host;
    impl_->path = path;
    impl_->timeout_seconds = timeout_seconds;
}

RpcBalanceProvider::~RpcBalanceProvider() = default;

std::string RpcBalanceProvider::rpc_call(const std::string& method,
                                         const nlohmann::json& params) const {
    std::uint64_t id;
    {
        std::lock_guard<std::mutex> lock(impl_->mu);
        id = impl_->next_id++;
    }
    nlohmann::json request{
        {"jsonrpc", "2.0"}, {"id", id}, {"method", method}, {"params", params}};

    httplib::Client client(impl_->host);
    client.set_connection_timeout(impl_->timeout_seconds);
    client.set_read_timeout(impl_->timeout_seconds);
    auto res = client.Post(impl_->path, request.dump(), "application/json");
    if (!res)
        throw TransportError("rpc " + method + ": no response from " + impl_->endpoint);
    if (res->status != 200)
        throw TransportError("rpc " + method + ": HTTP " + std::to_string(res->status));
    nlohmann::json body = nlohmann::json::parse(res->body, nullptr, false);
    if (body.is_discarded() || !body.is_object())
        throw TransportError("rpc " + method + ": malformed response body");
    if (body.contains("error"))
        throw TransportError("rpc " + method + ": " + body["error"].dump());
    if (!body.contains("result") || !body["result"].is_string())
        throw TransportError("rpc " + method + ": missing result");
    return body["result"].get<std::string>();
}

u128 RpcBalanceProvider::balance(const Address& account, const Asset& asset,
                                 std::uint64_t block_height) const {
    std::string result;
    if (asset.native) {
        result = rpc_call("eth_getBalance",
                          nlohmann::json::array({account.to_string(), block_tag(block_height)}));
    } else {
        nlohmann::json call{{"to", asset.token.to_string()},
                            {"data", kBalanceOfSelector + padded_address(account)}};
        result = rpc_call("eth_call", nlohmann::json::array({call, block_tag(block_height)}));
    }
    try {
        return parse_hex_u128(result);
    } catch (const ParseError& e) {
        throw TransportError(std::string("rpc balance: ") + e.what());
    }
}

std::optional<int> RpcBalanceProvider::token_decimals(const Address& token) const {
    try {
        nlohmann::json call{{"to", token.to_string()}, {"data", kDecimalsSelector}};
        std::string result = rpc_call("eth_call", nlohmann::json::array({call, "latest"}));
        u128 v = parse_hex_u128(result);
        if (v > 77) return std::nullopt;  // not a sane decimals() answer
        return static_cast<int>(v);
    } catch (const Error&) {
        // tokens without a decimals() function simply have none
        return std::nullopt;
    }
}

}  // namespace daogov
