#include "util/address.hpp"

#include "util/errors.hpp"

namespace daogov {

namespace {

int hex_nibble(char c) noexcept {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace

bool Address::try_parse(std::string_view text, Address& out) noexcept {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        text.remove_prefix(2);
    if (text.size() != 40) return false;
    for (std::size_t i = 0; i < 20; ++i) {
        int hi = hex_nibble(text[2 * i]);
        int lo = hex_nibble(text[2 * i + 1]);
        if (hi < 0 || lo < 0) return false;
        out.bytes[i] = static_cast<std::uint8_t>(hi << 4 | lo);
    }
    return true;
}

Address Address::parse(std::string_view text) {
    Address a;
    if (!try_parse(text, a))
        throw ParseError("invalid address: '" + std::string(text) + "' (expected 20-byte hex)");
    return a;
}

std::string Address::to_string() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(42);
    s += "0x";
    for (std::uint8_t b : bytes) {
        s += digits[b >> 4];
        s += digits[b & 0xf];
    }
    return s;
}

std::size_t AddressHash::operator()(const Address& a) const noexcept {
    // FNV-1a over the raw bytes
    std::uint64_t h = 1469598103934665603ull;
    for (std::uint8_t b : a.bytes) {
        h ^= b;
        h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h);
}

}  // namespace daogov
