#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wiretap/coset_code.hpp"
#include "wiretap/gf2.hpp"
#include "wiretap/prng.hpp"

// Shared-key cryptosystem built on coset coding and learning parity with noise:
//
//   z = f_E(M · (a ∥ r)) ⊕ u·S ⊕ v
//   a = trunc(M⁻¹ · g(z ⊕ u·S), l)
//
// S (k×n) and M (m×m, invertible) form the preshared key; r and u are
// uniform, v is Bernoulli(p), f_E is coset encoding and g is ML decoding of
// the fine code. u travels in the clear with z.
//
// Decryption never detects failure: a corrupted or forged ciphertext decrypts
// to some wrong plaintext. This is not authenticated encryption, and the toy
// parameters below are not sized for security.

namespace wiretap::lpn {

struct LpnParams {
    std::size_t l = 0;  // plaintext bits
    std::size_t m = 0;  // mixed block bits, l + |r|
    std::size_t k = 0;  // public randomness bits
    std::size_t n = 0;  // ciphertext bits
    double p = 0.0;     // Bernoulli rate of v

    /// Throws ParameterError unless 0 < l <= m <= n, k >= 1 and 0 < p < 1/2.
    void validate() const;
    friend bool operator==(const LpnParams&, const LpnParams&) = default;
};

/// Toy defaults: l=4, m=8, k=16, n=23 (Golay fine code), p=0.05.
LpnParams toy_params();

/// Fine code available to keygen, given by its cyclic generator polynomial.
struct CodeFamily {
    std::string name;
    std::size_t n;
    std::uint64_t generator_poly;
};

const std::vector<CodeFamily>& registered_code_families();

/// Minimum P(weight(v) <= radius) keygen demands of the selected code.
inline constexpr double kMinCorrectableProbability = 0.9;

/// P(Binomial(n, p) <= radius).
double correctable_probability(std::size_t n, double p, std::size_t radius);

/// Guaranteed correction radius floor((d_min - 1) / 2) of the fine code.
std::size_t correction_radius(const coding::CosetCode& code);

/// Registered family of length params.n with k_fine >= m, turned into a coset
/// code whose secrecy subcode is spanned by the first k_fine - m generator
/// rows. Throws ParameterError when no family fits or the noise is too heavy.
coding::CosetCode select_code(const LpnParams& params);

struct LpnKey {
    LpnParams params;
    gf2::BitMatrix s_matrix;    // k × n
    gf2::BitMatrix mixing;      // m × m
    gf2::BitMatrix mixing_inv;  // cached inverse of mixing
    coding::CosetCode code;     // n, msg_len == m
    std::size_t radius = 0;

    /// Checks shapes, the cached inverse and the code against params.
    void validate() const;
};

struct LpnCiphertext {
    gf2::BitVector z;  // n bits
    gf2::BitVector u;  // k bits, public
    friend bool operator==(const LpnCiphertext&, const LpnCiphertext&) = default;
};

/// Every random input of one encryption.
struct EncryptionRandomness {
    gf2::BitVector r;       // m - l
    gf2::BitVector u;       // k
    gf2::BitVector v;       // n
    gf2::BitVector coset;   // k_coarse coset-member coefficients
};

LpnKey keygen(PrngStream& rng, const LpnParams& params);

/// Draws r, u, v and the coset choice from labeled substreams split off rng.
EncryptionRandomness draw_randomness(const LpnKey& key, PrngStream& rng);

LpnCiphertext encrypt(const LpnKey& key, const gf2::BitVector& a, PrngStream& rng);
LpnCiphertext encrypt_with(const LpnKey& key, const gf2::BitVector& a, const EncryptionRandomness& randomness);

gf2::BitVector decrypt(const LpnKey& key, const LpnCiphertext& ct);

// Key file: "lpn-key v1: l,m,k,n,p", then S, M and the code (its header
// line and matrix line), one artifact per line.
std::string to_text(const LpnKey& key);
LpnKey key_from_text(std::string_view text);

// Ciphertext file: "lpn-ct v1: n,k", then z and u.
std::string to_text(const LpnCiphertext& ct);
LpnCiphertext ciphertext_from_text(std::string_view text);

}  // namespace wiretap::lpn
