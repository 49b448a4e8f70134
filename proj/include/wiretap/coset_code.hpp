#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "wiretap/gf2.hpp"
#include "wiretap/prng.hpp"

namespace wiretap::coding {

/// Largest fine-code dimension any enumeration (ML decoding, equivocation)
/// will accept.
inline constexpr std::size_t kMaxEnumerationDim = 20;
/// Largest block length for exact equivocation (2^n work).
inline constexpr std::size_t kMaxExactBlockLength = 24;

struct WiretapCodeParams {
    std::size_t n = 0;         // block length
    std::size_t k_fine = 0;    // dimension of the code Bob decodes
    std::size_t k_coarse = 0;  // dimension of the secrecy subcode
    std::size_t k_msg = 0;     // secret bits per block, k_fine - k_coarse
    double epsilon = 0.0;

    /// Throws ParameterError when the dimension chain or epsilon is invalid.
    void validate() const;
    double rate() const { return n == 0 ? 0.0 : static_cast<double>(k_msg) / static_cast<double>(n); }
};

/// k_fine = floor(n (1 - h(p) - 2 eps)), k_coarse = floor(n (1 - h(p_w) - 2 eps)),
/// k_msg = k_fine - k_coarse.
WiretapCodeParams params_from_channel(std::size_t n, double p, double p_w, double epsilon);

/// Coset (syndrome) code. The first zero_len() rows of h are the parity checks
/// of the fine code; the remaining msg_len() rows carry the message, so an
/// encoding x of s satisfies h·x = [0 ∥ s]. Immutable.
class CosetCode {
public:
    /// h must have full row rank and k_fine in [n - rows(h), n].
    CosetCode(gf2::BitMatrix h, std::size_t k_fine);

    std::size_t n() const noexcept { return h_.cols(); }
    std::size_t k_fine() const noexcept { return n() - zero_len_; }
    std::size_t k_coarse() const noexcept { return n() - h_.rows(); }
    std::size_t zero_len() const noexcept { return zero_len_; }
    std::size_t msg_len() const noexcept { return h_.rows() - zero_len_; }
    double rate() const { return static_cast<double>(msg_len()) / static_cast<double>(n()); }

    const gf2::BitMatrix& h() const noexcept { return h_; }
    const gf2::AffineSolver& solver() const noexcept { return solver_; }
    /// Basis of the fine code {x : first zero_len() syndrome bits are 0}.
    const std::vector<gf2::BitVector>& fine_basis() const noexcept { return fine_basis_; }

    /// Message block of h·x.
    gf2::BitVector message_of(const gf2::BitVector& x) const;
    /// [0^zero_len ∥ s].
    gf2::BitVector syndrome_target(const gf2::BitVector& s) const;

    friend bool operator==(const CosetCode& a, const CosetCode& b) {
        return a.h_ == b.h_ && a.zero_len_ == b.zero_len_;
    }

private:
    gf2::BitMatrix h_;
    std::size_t zero_len_;
    gf2::AffineSolver solver_;
    std::vector<gf2::BitVector> fine_basis_;
};

/// Uniformly random full-rank (n - k_coarse) x n parity matrix.
CosetCode random_coset_code(PrngStream& rng, const WiretapCodeParams& params);

/// Builds h from the fine code's parity checks and a generator of a secrecy
/// subcode (every row must be a fine codeword): the parity rows come first,
/// followed by independent checks of the subcode.
CosetCode coset_code_from_nested(const gf2::BitMatrix& fine_parity, const gf2::BitMatrix& coarse_generator);

/// Uniformly random member of the coset {x : h·x = [0 ∥ s]}.
gf2::BitVector encode(const CosetCode& code, const gf2::BitVector& s, PrngStream& rng);
/// Coset member selected by explicit kernel coefficients (k_coarse bits).
gf2::BitVector encode_with(const CosetCode& code, const gf2::BitVector& s, const gf2::BitVector& coeffs);

/// All fine codewords of a code with n <= 64 and k_fine <= kMaxEnumerationDim,
/// packed into words, with the message each one carries.
class Codebook {
public:
    /// Throws CapabilityError outside the enumeration budget.
    explicit Codebook(const CosetCode& code);

    std::size_t n() const noexcept { return n_; }
    std::size_t msg_len() const noexcept { return msg_len_; }
    const std::vector<std::uint64_t>& codewords() const noexcept { return codewords_; }
    const std::vector<std::uint32_t>& messages() const noexcept { return messages_; }

    /// Message of the codeword nearest to y in Hamming distance; ties go to
    /// the lexicographically smallest codeword (bit 0 compared first).
    std::uint32_t decode(std::uint64_t y) const;

private:
    std::size_t n_;
    std::size_t msg_len_;
    std::vector<std::uint64_t> codewords_;
    std::vector<std::uint32_t> messages_;
};

/// Exact maximum-likelihood decoding over BSC(p), p < 1/2 (minimum distance).
gf2::BitVector decode_ml(const CosetCode& code, const gf2::BitVector& y, double p);

/// n = 2, h = [1 1]: message 0 -> {00, 11}, message 1 -> {01, 10}.
CosetCode example1_code();
/// n = 1 direct transmission, h = [1].
CosetCode uncoded_code();

// Text form: "n,k_fine,k_coarse" line followed by the h matrix line.
std::string to_text(const CosetCode& code);
CosetCode code_from_text(std::string_view text);

/// Cyclic code generator matrix: rows are shifts of the generator polynomial
/// (bit i = coefficient of x^i), k = n - deg(g).
gf2::BitMatrix cyclic_generator(std::size_t n, std::uint64_t poly);
/// Parity-check matrix (basis of the dual) of the code spanned by g's rows.
gf2::BitMatrix parity_check_of(const gf2::BitMatrix& generator);

}  // namespace wiretap::coding
