#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "wiretap/gf2.hpp"

namespace wiretap {

/// Deterministic keyed bit stream: ChaCha20 keystream in counter mode under
/// a 256-bit key derived from (seed, label) with BLAKE2b. Streams with
/// different labels are independent; derive() gives child substreams.
///
/// Not thread-safe; give each worker its own stream.
class PrngStream {
public:
    static constexpr std::size_t kMinSeedBytes = 16;

    /// Throws ParameterError when seed is shorter than kMinSeedBytes.
    PrngStream(std::span<const std::uint8_t> seed, std::string_view label);

    /// Child stream keyed by (this stream's key, label). Does not advance this stream.
    PrngStream derive(std::string_view label) const;
    /// Child stream keyed by (32 fresh bytes of this stream, label). Advances
    /// this stream, so repeated calls give distinct children.
    PrngStream split(std::string_view label);

    std::uint32_t next_u32();
    std::uint64_t next_u64();
    gf2::BitVector next_bits(std::size_t count);
    /// True with probability floor(p * 2^32) / 2^32, from 32 fresh bits.
    bool bernoulli(double p);
    gf2::BitVector bernoulli_bits(std::size_t count, double p);
    /// Uniform in [0, 1) with 53 bits of resolution.
    double uniform();
    /// Uniform integer in [0, bound), bound > 0.
    std::uint64_t uniform_below(std::uint64_t bound);
    /// Standard normal draw (Marsaglia polar method).
    double gaussian();

private:
    PrngStream() = default;
    void refill();
    std::uint8_t next_byte();

    std::array<std::uint8_t, 32> key_{};
    std::uint64_t block_counter_ = 0;
    std::array<std::uint8_t, 64> block_{};
    std::size_t block_pos_ = 64;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

/// Stream for a seed and a label; seed must be at least 16 bytes.
PrngStream prng_stream(std::span<const std::uint8_t> seed, std::string_view label);

/// Parses a hex seed (optional 0x prefix). No length check; PrngStream enforces it.
std::vector<std::uint8_t> seed_from_hex(std::string_view hex);

}  // namespace wiretap
