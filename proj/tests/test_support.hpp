#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "wiretap/prng.hpp"

namespace wiretap::test {

/// 16-byte test seed ending in the given value.
inline std::vector<std::uint8_t> seed(std::uint64_t value) {
    std::vector<std::uint8_t> bytes(16, 0);
    for (int i = 0; i < 8; ++i) bytes[15 - i] = static_cast<std::uint8_t>(value >> (8 * i));
    return bytes;
}

inline PrngStream stream(std::uint64_t value, std::string_view label = "test") {
    return PrngStream(seed(value), label);
}

}  // namespace wiretap::test
