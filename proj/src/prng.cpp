#include "wiretap/prng.hpp"

#include <sodium.h>

#include <cmath>
#include <stdexcept>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap {

namespace {

void ensure_sodium() {
    static const bool ready = sodium_init() >= 0;
    if (!ready) throw std::runtime_error("libsodium initialization failed");
}

}  // namespace

PrngStream::PrngStream(std::span<const std::uint8_t> seed, std::string_view label) {
    if (seed.size() < kMinSeedBytes) {
        throw ParameterError("seed must be at least " + std::to_string(kMinSeedBytes) + " bytes, got " +
                             std::to_string(seed.size()));
    }
    ensure_sodium();
    // key = BLAKE2b-256(len64le(seed) || seed || label)
    crypto_generichash_state state;
    crypto_generichash_init(&state, nullptr, 0, key_.size());
    std::array<std::uint8_t, 8> len{};
    for (std::size_t i = 0; i < len.size(); ++i) len[i] = static_cast<std::uint8_t>(seed.size() >> (8 * i));
    crypto_generichash_update(&state, len.data(), len.size());
    crypto_generichash_update(&state, seed.data(), seed.size());
    crypto_generichash_update(&state, reinterpret_cast<const unsigned char*>(label.data()), label.size());
    crypto_generichash_final(&state, key_.data(), key_.size());
}

PrngStream PrngStream::derive(std::string_view label) const {
    PrngStream child;
    crypto_generichash(child.key_.data(), child.key_.size(), reinterpret_cast<const unsigned char*>(label.data()),
                       label.size(), key_.data(), key_.size());
    return child;
}

PrngStream PrngStream::split(std::string_view label) {
    std::array<std::uint8_t, 32> fresh{};
    for (auto& b : fresh) b = next_byte();
    PrngStream child;
    crypto_generichash(child.key_.data(), child.key_.size(), reinterpret_cast<const unsigned char*>(label.data()),
                       label.size(), fresh.data(), fresh.size());
    return child;
}

void PrngStream::refill() {
    static constexpr std::array<std::uint8_t, 64> kZeros{};
    static constexpr std::array<std::uint8_t, crypto_stream_chacha20_NONCEBYTES> kNonce{};
    crypto_stream_chacha20_xor_ic(block_.data(), kZeros.data(), kZeros.size(), kNonce.data(), block_counter_,
                                  key_.data());
    ++block_counter_;
    block_pos_ = 0;
}

std::uint8_t PrngStream::next_byte() {
    if (block_pos_ == block_.size()) refill();
    return block_[block_pos_++];
}

std::uint32_t PrngStream::next_u32() {
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i) v |= std::uint32_t{next_byte()} << (8 * i);
    return v;
}

std::uint64_t PrngStream::next_u64() {
    const std::uint64_t lo = next_u32();
    const std::uint64_t hi = next_u32();
    return lo | (hi << 32);
}

gf2::BitVector PrngStream::next_bits(std::size_t count) {
    gf2::BitVector v(count);
    for (auto& w : v.mutable_words()) w = next_u64();
    v.trim();
    return v;
}

bool PrngStream::bernoulli(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("bernoulli probability must lie in [0, 1]");
    const auto threshold = static_cast<std::uint64_t>(std::floor(std::ldexp(p, 32)));
    return next_u32() < threshold;
}

gf2::BitVector PrngStream::bernoulli_bits(std::size_t count, double p) {
    gf2::BitVector v(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (bernoulli(p)) v.set(i, true);
    }
    return v;
}

double PrngStream::uniform() { return std::ldexp(static_cast<double>(next_u64() >> 11), -53); }

std::uint64_t PrngStream::uniform_below(std::uint64_t bound) {
    if (bound == 0) throw DomainError("uniform_below needs a positive bound");
    const std::uint64_t limit = (~std::uint64_t{0}) - ((~std::uint64_t{0}) % bound);
    for (;;) {
        const std::uint64_t v = next_u64();
        if (v < limit) return v % bound;
    }
}

double PrngStream::gaussian() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    for (;;) {
        const double u = 2.0 * uniform() - 1.0;
        const double v = 2.0 * uniform() - 1.0;
        const double s = u * u + v * v;
        if (s > 0.0 && s < 1.0) {
            const double scale = std::sqrt(-2.0 * std::log(s) / s);
            spare_ = v * scale;
            has_spare_ = true;
            return u * scale;
        }
    }
}

PrngStream prng_stream(std::span<const std::uint8_t> seed, std::string_view label) {
    return PrngStream(seed, label);
}

std::vector<std::uint8_t> seed_from_hex(std::string_view hex) {
    if (hex.starts_with("0x") || hex.starts_with("0X")) hex.remove_prefix(2);
    return gf2::from_hex(hex);
}

}  // namespace wiretap
