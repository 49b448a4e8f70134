#include "wiretap/lpn.hpp"

#include <bit>
#include <cmath>
#include <cstdlib>
#include <sstream>

#include "wiretap/errors.hpp"
#include "wiretap/format.hpp"

namespace wiretap::lpn {

using gf2::BitMatrix;
using gf2::BitVector;

namespace {

std::vector<std::string> split_lines(std::string_view text) {
    std::vector<std::string> lines;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) lines.push_back(line);
    }
    return lines;
}

// Splits "a,b,c" into fields.
std::vector<std::string> split_fields(std::string_view s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        const auto comma = s.find(',', start);
        out.emplace_back(s.substr(start, comma - start));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return out;
}

std::size_t parse_size(const std::string& field) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(field.c_str(), &end, 10);
    if (field.empty() || *end != '\0' || field.front() == '-') throw ParseError("bad integer field '" + field + "'");
    return static_cast<std::size_t>(v);
}

double parse_real(const std::string& field) {
    char* end = nullptr;
    const double v = std::strtod(field.c_str(), &end);
    if (field.empty() || *end != '\0') throw ParseError("bad real field '" + field + "'");
    return v;
}

// Fields after "<tag> v1: ".
std::vector<std::string> header_fields(const std::string& line, std::string_view tag, std::size_t count) {
    const std::string prefix = std::string(tag) + " v1: ";
    if (line.rfind(prefix, 0) != 0) throw ParseError("expected header '" + prefix + "...', got '" + line + "'");
    auto fields = split_fields(std::string_view(line).substr(prefix.size()));
    if (fields.size() != count) throw ParseError("header '" + line + "' has the wrong number of fields");
    return fields;
}

}  // namespace

void LpnParams::validate() const {
    if (!(l >= 1 && l <= m && m <= n)) throw ParameterError("LPN params need 1 <= l <= m <= n");
    if (k == 0) throw ParameterError("LPN params need k >= 1");
    if (!(p > 0.0 && p < 0.5)) throw ParameterError("LPN noise rate must lie in (0, 1/2)");
}

LpnParams toy_params() { return {4, 8, 16, 23, 0.05}; }

const std::vector<CodeFamily>& registered_code_families() {
    static const std::vector<CodeFamily> families = {
        {"hamming-7-4", 7, 0xB},     // x^3 + x + 1
        {"bch-15-7", 15, 0x1D1},     // x^8 + x^7 + x^6 + x^4 + 1
        {"golay-23-12", 23, 0xC75},  // x^11 + x^10 + x^6 + x^5 + x^4 + x^2 + 1
    };
    return families;
}

double correctable_probability(std::size_t n, double p, std::size_t radius) {
    double total = 0.0;
    double binom = 1.0;
    for (std::size_t i = 0; i <= std::min(radius, n); ++i) {
        if (i > 0) binom = binom * static_cast<double>(n - i + 1) / static_cast<double>(i);
        total += binom * std::pow(p, static_cast<double>(i)) * std::pow(1.0 - p, static_cast<double>(n - i));
    }
    return std::min(1.0, total);
}

std::size_t correction_radius(const coding::CosetCode& code) {
    const coding::Codebook book(code);
    int d_min = static_cast<int>(code.n()) + 1;
    for (auto w : book.codewords()) {
        if (w != 0) d_min = std::min(d_min, std::popcount(w));
    }
    if (book.codewords().size() == 1) return code.n();
    return static_cast<std::size_t>((d_min - 1) / 2);
}

coding::CosetCode select_code(const LpnParams& params) {
    params.validate();
    for (const auto& family : registered_code_families()) {
        if (family.n != params.n) continue;
        const BitMatrix generator = coding::cyclic_generator(family.n, family.generator_poly);
        if (generator.rows() < params.m) continue;
        const BitMatrix coarse = generator.row_block(0, generator.rows() - params.m);
        auto code = coding::coset_code_from_nested(coding::parity_check_of(generator), coarse);
        const double ok = correctable_probability(params.n, params.p, correction_radius(code));
        if (ok < kMinCorrectableProbability) {
            throw ParameterError(family.name + " corrects noise weight <= radius only with probability " +
                                 format_number(ok) + " at p=" + format_number(params.p));
        }
        return code;
    }
    throw ParameterError("no registered code of length " + std::to_string(params.n) + " carries " +
                         std::to_string(params.m) + " message bits");
}

void LpnKey::validate() const {
    params.validate();
    if (s_matrix.rows() != params.k || s_matrix.cols() != params.n) throw ParameterError("S must be k x n");
    if (mixing.rows() != params.m || mixing.cols() != params.m) throw ParameterError("M must be m x m");
    if (gf2::multiply(mixing, mixing_inv) != BitMatrix::identity(params.m)) {
        throw ParameterError("cached inverse does not invert M");
    }
    if (code.n() != params.n || code.msg_len() != params.m) {
        throw ParameterError("code must have length n and carry m message bits");
    }
}

LpnKey keygen(PrngStream& rng, const LpnParams& params) {
    auto code = select_code(params);
    PrngStream s_stream = rng.split("lpn/S");
    PrngStream m_stream = rng.split("lpn/M");
    BitMatrix s(params.k, params.n);
    for (std::size_t i = 0; i < params.k; ++i) s.row(i) = s_stream.next_bits(params.n);
    BitMatrix mixing = gf2::random_invertible(m_stream, params.m);
    BitMatrix mixing_inv = gf2::invert(mixing);
    const std::size_t radius = correction_radius(code);
    return {params, std::move(s), std::move(mixing), std::move(mixing_inv), std::move(code), radius};
}

EncryptionRandomness draw_randomness(const LpnKey& key, PrngStream& rng) {
    const auto& prm = key.params;
    EncryptionRandomness out;
    out.r = rng.split("lpn/r").next_bits(prm.m - prm.l);
    out.u = rng.split("lpn/u").next_bits(prm.k);
    out.v = rng.split("lpn/v").bernoulli_bits(prm.n, prm.p);
    out.coset = rng.split("lpn/coset").next_bits(key.code.k_coarse());
    return out;
}

LpnCiphertext encrypt_with(const LpnKey& key, const BitVector& a, const EncryptionRandomness& rnd) {
    const auto& prm = key.params;
    if (a.size() != prm.l) {
        throw DimensionError("plaintext has " + std::to_string(a.size()) + " bits, key expects " +
                             std::to_string(prm.l));
    }
    if (rnd.r.size() != prm.m - prm.l || rnd.u.size() != prm.k || rnd.v.size() != prm.n) {
        throw DimensionError("encryption randomness does not match the key parameters");
    }
    const BitVector mixed = gf2::mat_vec_mul(key.mixing, a.concat(rnd.r));
    BitVector z = coding::encode_with(key.code, mixed, rnd.coset);
    z ^= gf2::vec_mat_mul(rnd.u, key.s_matrix);
    z ^= rnd.v;
    return {std::move(z), rnd.u};
}

LpnCiphertext encrypt(const LpnKey& key, const BitVector& a, PrngStream& rng) {
    return encrypt_with(key, a, draw_randomness(key, rng));
}

BitVector decrypt(const LpnKey& key, const LpnCiphertext& ct) {
    const auto& prm = key.params;
    if (ct.z.size() != prm.n || ct.u.size() != prm.k) {
        throw DimensionError("ciphertext lengths do not match the key parameters");
    }
    const BitVector unmasked = ct.z ^ gf2::vec_mat_mul(ct.u, key.s_matrix);
    const BitVector mixed = coding::decode_ml(key.code, unmasked, prm.p);
    return gf2::mat_vec_mul(key.mixing_inv, mixed).slice(0, prm.l);
}

std::string to_text(const LpnKey& key) {
    const auto& prm = key.params;
    std::string out = "lpn-key v1: " + std::to_string(prm.l) + "," + std::to_string(prm.m) + "," +
                      std::to_string(prm.k) + "," + std::to_string(prm.n) + "," + format_number(prm.p) + "\n";
    out += gf2::to_text(key.s_matrix) + "\n";
    out += gf2::to_text(key.mixing) + "\n";
    out += coding::to_text(key.code);
    return out;
}

LpnKey key_from_text(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.size() != 5) throw ParseError("key file needs 5 lines, found " + std::to_string(lines.size()));
    const auto f = header_fields(lines[0], "lpn-key", 5);
    LpnParams params{parse_size(f[0]), parse_size(f[1]), parse_size(f[2]), parse_size(f[3]), parse_real(f[4])};
    BitMatrix s = gf2::matrix_from_text(lines[1]);
    BitMatrix mixing = gf2::matrix_from_text(lines[2]);
    auto code = coding::code_from_text(lines[3] + "\n" + lines[4] + "\n");
    if (mixing.rows() != mixing.cols()) throw ParseError("mixing matrix is not square");
    BitMatrix mixing_inv = gf2::invert(mixing);
    const std::size_t radius = correction_radius(code);
    LpnKey key{params, std::move(s), std::move(mixing), std::move(mixing_inv), std::move(code), radius};
    key.validate();
    return key;
}

std::string to_text(const LpnCiphertext& ct) {
    return "lpn-ct v1: " + std::to_string(ct.z.size()) + "," + std::to_string(ct.u.size()) + "\n" +
           gf2::to_text(ct.z) + "\n" + gf2::to_text(ct.u) + "\n";
}

LpnCiphertext ciphertext_from_text(std::string_view text) {
    const auto lines = split_lines(text);
    if (lines.size() != 3) throw ParseError("ciphertext file needs 3 lines, found " + std::to_string(lines.size()));
    const auto f = header_fields(lines[0], "lpn-ct", 2);
    LpnCiphertext ct{gf2::vector_from_text(lines[1]), gf2::vector_from_text(lines[2])};
    if (ct.z.size() != parse_size(f[0]) || ct.u.size() != parse_size(f[1])) {
        throw ParseError("ciphertext header disagrees with its vectors");
    }
    return ct;
}

}  // namespace wiretap::lpn
