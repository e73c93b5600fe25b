#include "util/u128.hpp"

#include "util/errors.hpp"

namespace daogov {

u128 parse_u128(std::string_view text) {
    if (text.empty()) throw ParseError("empty integer literal");
    constexpr u128 max = ~u128{0};
    u128 v = 0;
    for (char c : text) {
        if (c < '0' || c > '9')
            throw ParseError("invalid integer literal: '" + std::string(text) + "'");
        unsigned d = static_cast<unsigned>(c - '0');
        if (v > (max - d) / 10)
            throw ParseError("integer literal exceeds 128 bits: '" + std::string(text) + "'");
        v = v * 10 + d;
    }
    return v;
}

std::string u128_to_string(u128 v) {
    if (v == 0) return "0";
    char buf[40];
    int i = 40;
    while (v > 0) {
        buf[--i] = static_cast<char>('0' + static_cast<unsigned>(v % 10));
        v /= 10;
    }
    return std::string(buf + i, buf + 40);
}

u128 pow10_u128(int exp) {
    if (exp < 0 || exp > 38)
        throw ValidationError("decimal exponent out of range: " + std::to_string(exp));
    u128 v = 1;
    for (int i = 0; i < exp; ++i) v *= 10;
    return v;
}

u128 parse_hex_u128(std::string_view text) {
    if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X'))
        text.remove_prefix(2);
    if (text.empty()) throw ParseError("empty hex quantity");
    // tolerate the zero-padded 32-byte words returned by eth_call
    std::size_t first = text.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    text.remove_prefix(first);
    if (text.size() > 32)
        throw ParseError("hex quantity exceeds 128 bits");
    u128 v = 0;
    for (char c : text) {
        int d;
        if (c >= '0' && c <= '9') d = c - '0';
        else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
        else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
        else throw ParseError("invalid hex quantity");
        v = v << 4 | static_cast<unsigned>(d);
    }
    return v;
}

double scale_by_decimals(u128 raw, int decimals) {
    u128 p = pow10_u128(decimals);
    u128 q = raw / p;
    u128 r = raw % p;
    // Integer part and fractional part converted separately so that exact
    // divisions (r == 0) stay exact in the double result.
    double out = static_cast<double>(q);
    if (r != 0) out += static_cast<double>(r) / static_cast<double>(p);
    return out;
}

}  // namespace daogov
