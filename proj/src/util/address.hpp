#pragma once

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace daogov {

// 20-byte account identifier. Canonical text form is lowercase 0x-prefixed
// hex; equality is byte equality.
struct Address {
    std::array<std::uint8_t, 20> bytes{};

    static Address parse(std::string_view text);  // throws ParseError
    static bool try_parse(std::string_view text, Address& out) noexcept;

    std::string to_string() const;

    auto operator<=>(const Address&) const = default;
};

struct AddressHash {
    std::size_t operator()(const Address& a) const noexcept;
};

}  // namespace daogov
