#include "wiretap/coset_code.hpp"

#include <bit>
#include <cmath>
#include <sstream>
#include <utility>

#include "wiretap/errors.hpp"
#include "wiretap/info.hpp"

namespace wiretap::coding {

using gf2::BitMatrix;
using gf2::BitVector;

void WiretapCodeParams::validate() const {
    if (!(k_coarse <= k_fine && k_fine <= n)) throw ParameterError("need k_coarse <= k_fine <= n");
    if (k_msg != k_fine - k_coarse) throw ParameterError("k_msg must equal k_fine - k_coarse");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
}

WiretapCodeParams params_from_channel(std::size_t n, double p, double p_w, double epsilon) {
    if (!(p >= 0.0 && p <= p_w && p_w <= 0.5)) throw ParameterError("need 0 <= p <= p_w <= 1/2");
    if (!(epsilon > 0.0)) throw ParameterError("epsilon must be positive");
    const double len = static_cast<double>(n);
    const double fine = std::floor(len * (1.0 - info::binary_entropy(p) - 2.0 * epsilon));
    const double coarse = std::floor(len * (1.0 - info::binary_entropy(p_w) - 2.0 * epsilon));
    if (fine <= 0.0) throw ParameterError("k_fine is not positive; lower epsilon or p");
    WiretapCodeParams params;
    params.n = n;
    params.k_fine = static_cast<std::size_t>(fine);
    // h(p_w) may reach 1, which leaves no room for a secrecy subcode.
    params.k_coarse = coarse > 0.0 ? static_cast<std::size_t>(coarse) : 0;
    params.k_msg = params.k_fine - params.k_coarse;
    params.epsilon = epsilon;
    params.validate();
    return params;
}

CosetCode::CosetCode(BitMatrix h, std::size_t k_fine)
    : h_(std::move(h)), zero_len_(h_.cols() - std::min(k_fine, h_.cols())), solver_(h_) {
    if (k_fine > n() || zero_len_ > h_.rows()) {
        throw ParameterError("k_fine must lie in [n - rows(h), n]");
    }
    if (solver_.rank() != h_.rows()) throw ParameterError("coset code parity matrix must have full row rank");
    fine_basis_ = gf2::kernel_basis(h_.row_block(0, zero_len_));
}

BitVector CosetCode::message_of(const BitVector& x) const {
    return gf2::mat_vec_mul(h_, x).slice(zero_len_, msg_len());
}

BitVector CosetCode::syndrome_target(const BitVector& s) const {
    if (s.size() != msg_len()) {
        throw DimensionError("message has " + std::to_string(s.size()) + " bits, code carries " +
                             std::to_string(msg_len()));
    }
    return BitVector(zero_len_).concat(s);
}

CosetCode random_coset_code(PrngStream& rng, const WiretapCodeParams& params) {
    params.validate();
    return CosetCode(gf2::random_full_rank(rng, params.n - params.k_coarse, params.n), params.k_fine);
}

CosetCode coset_code_from_nested(const BitMatrix& fine_parity, const BitMatrix& coarse_generator) {
    const std::size_t n = fine_parity.cols();
    if (coarse_generator.cols() != n) throw DimensionError("fine parity and coarse generator lengths differ");
    if (gf2::rank(coarse_generator) != coarse_generator.rows()) {
        throw ParameterError("coarse generator rows must be independent");
    }
    for (std::size_t i = 0; i < coarse_generator.rows(); ++i) {
        if (!gf2::mat_vec_mul(fine_parity, coarse_generator.row(i)).is_zero()) {
            throw ParameterError("coarse subcode is not contained in the fine code");
        }
    }
    const std::size_t fine_rank = gf2::rank(fine_parity);
    if (fine_rank != fine_parity.rows()) throw ParameterError("fine parity checks must be independent");

    std::vector<BitVector> rows;
    for (std::size_t i = 0; i < fine_parity.rows(); ++i) rows.push_back(fine_parity.row(i));
    const std::size_t target = n - coarse_generator.rows();
    for (const auto& check : gf2::kernel_basis(coarse_generator)) {
        if (rows.size() == target) break;
        rows.push_back(check);
        if (gf2::rank(BitMatrix::from_rows(rows, n)) != rows.size()) rows.pop_back();
    }
    return CosetCode(BitMatrix::from_rows(std::move(rows), n), n - fine_parity.rows());
}

BitVector encode(const CosetCode& code, const BitVector& s, PrngStream& rng) {
    return code.solver().sample(code.syndrome_target(s), rng);
}

BitVector encode_with(const CosetCode& code, const BitVector& s, const BitVector& coeffs) {
    return code.solver().solve(code.syndrome_target(s), coeffs);
}

Codebook::Codebook(const CosetCode& code) : n_(code.n()), msg_len_(code.msg_len()) {
    if (code.n() > 64 || code.k_fine() > kMaxEnumerationDim) {
        throw CapabilityError("codeword enumeration needs n <= 64 and k_fine <= " +
                              std::to_string(kMaxEnumerationDim) + " (got n=" + std::to_string(code.n()) +
                              ", k_fine=" + std::to_string(code.k_fine()) + ")");
    }
    const auto& basis = code.fine_basis();
    std::vector<std::uint64_t> basis_words;
    std::vector<std::uint32_t> basis_messages;
    for (const auto& b : basis) {
        basis_words.push_back(b.to_u64());
        basis_messages.push_back(static_cast<std::uint32_t>(code.message_of(b).to_u64()));
    }
    // Gray-code walk: step i toggles basis vector ctz(i).
    const std::size_t count = std::size_t{1} << basis.size();
    codewords_.resize(count);
    messages_.resize(count);
    std::uint64_t word = 0;
    std::uint32_t message = 0;
    for (std::size_t i = 0; i < count; ++i) {
        if (i > 0) {
            const auto j = static_cast<std::size_t>(std::countr_zero(i));
            word ^= basis_words[j];
            message ^= basis_messages[j];
        }
        codewords_[i] = word;
        messages_[i] = message;
    }
}

std::uint32_t Codebook::decode(std::uint64_t y) const {
    std::size_t best = 0;
    int best_distance = std::popcount(y ^ codewords_[0]);
    for (std::size_t i = 1; i < codewords_.size(); ++i) {
        const int d = std::popcount(y ^ codewords_[i]);
        if (d < best_distance) {
            best = i;
            best_distance = d;
        } else if (d == best_distance) {
            // Lexicographic order reads bit 0 first: the smaller word has a 0
            // at the lowest differing position.
            const std::uint64_t diff = codewords_[i] ^ codewords_[best];
            if ((codewords_[i] & diff & (~diff + 1)) == 0) best = i;
        }
    }
    return messages_[best];
}

BitVector decode_ml(const CosetCode& code, const BitVector& y, double p) {
    if (!(p >= 0.0 && p < 0.5)) throw DomainError("decode_ml needs 0 <= p < 1/2");
    if (y.size() != code.n()) throw DimensionError("received word length does not match code length");
    const Codebook book(code);
    return BitVector::from_u64(code.msg_len(), book.decode(y.to_u64()));
}

CosetCode example1_code() { return CosetCode(BitMatrix::from_strings({"11"}), 2); }

CosetCode uncoded_code() { return CosetCode(BitMatrix::identity(1), 1); }

std::string to_text(const CosetCode& code) {
    return std::to_string(code.n()) + "," + std::to_string(code.k_fine()) + "," + std::to_string(code.k_coarse()) +
           "\n" + gf2::to_text(code.h()) + "\n";
}

CosetCode code_from_text(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::string header;
    std::string matrix;
    if (!std::getline(in, header) || !std::getline(in, matrix)) throw ParseError("code text needs two lines");
    std::size_t n = 0, k_fine = 0, k_coarse = 0;
    char c1 = 0, c2 = 0;
    std::istringstream hs(header);
    if (!(hs >> n >> c1 >> k_fine >> c2 >> k_coarse) || c1 != ',' || c2 != ',' || !hs.eof()) {
        throw ParseError("bad code header '" + header + "', expected n,k_fine,k_coarse");
    }
    CosetCode code(gf2::matrix_from_text(matrix), k_fine);
    if (code.n() != n || code.k_coarse() != k_coarse) throw ParseError("code header disagrees with its matrix");
    return code;
}

BitMatrix cyclic_generator(std::size_t n, std::uint64_t poly) {
    if (poly == 0 || (poly & 1) == 0) throw ParameterError("generator polynomial needs a nonzero constant term");
    const auto degree = static_cast<std::size_t>(63 - std::countl_zero(poly));
    if (degree >= n) throw ParameterError("generator degree must be below n");
    BitMatrix g(n - degree, n);
    for (std::size_t r = 0; r < g.rows(); ++r) {
        for (std::size_t i = 0; i <= degree; ++i) {
            if ((poly >> i) & 1) g.set(r, r + i, true);
        }
    }
    return g;
}

BitMatrix parity_check_of(const BitMatrix& generator) {
    return BitMatrix::from_rows(gf2::kernel_basis(generator), generator.cols());
}

}  // namespace wiretap::coding
