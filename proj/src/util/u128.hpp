#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace daogov {

// Raw on-chain token amounts exceed 64 bits (a single ERC-20 balance is a
// uint256 scaled by up to 10^18). 128 bits cover every amount this engine
// handles; parsing rejects anything larger.
using u128 = unsigned __int128;

u128 parse_u128(std::string_view text);  // decimal digits only; throws ParseError
std::string u128_to_string(u128 v);

// 10^exp for exp in [0, 38]; throws ValidationError outside that range.
u128 pow10_u128(int exp);

// Parses 0x-prefixed big-endian hex (JSON-RPC quantity / 32-byte word).
// Throws ParseError on malformed input or values above 128 bits.
u128 parse_hex_u128(std::string_view text);

// raw / 10^decimals as a double, exact whenever the division is exact.
double scale_by_decimals(u128 raw, int decimals);

}  // namespace daogov
