#include "wiretap/gf2.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <utility>

#include "wiretap/errors.hpp"
#include "wiretap/prng.hpp"

namespace wiretap::gf2 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t word_count(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

void check_index(std::size_t i, std::size_t len) {
    if (i >= len) {
        throw DimensionError("bit index " + std::to_string(i) + " out of range for length " +
                             std::to_string(len));
    }
}

std::string shape(std::size_t rows, std::size_t cols) {
    return std::to_string(rows) + "x" + std::to_string(cols);
}

// Parses an unsigned decimal field; throws ParseError on junk.
std::size_t parse_count(std::string_view field) {
    std::size_t value = 0;
    auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
    if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
        throw ParseError("bad count field '" + std::string(field) + "'");
    }
    return value;
}

}  // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t len) : len_(len), words_(word_count(len), 0) {}

BitVector BitVector::from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] == '1') {
            v.set(i, true);
        } else if (bits[i] != '0') {
            throw ParseError("bit string may only contain 0 and 1");
        }
    }
    return v;
}

BitVector BitVector::from_u64(std::size_t len, std::uint64_t value) {
    if (len > kWordBits) throw DimensionError("from_u64 needs len <= 64");
    BitVector v(len);
    if (len > 0) {
        v.words_[0] = value;
        v.trim();
    }
    return v;
}

bool BitVector::get(std::size_t i) const {
    check_index(i, len_);
    return (words_[i / kWordBits] >> (i % kWordBits)) & 1U;
}

void BitVector::set(std::size_t i, bool value) {
    check_index(i, len_);
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

void BitVector::flip(std::size_t i) {
    check_index(i, len_);
    words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits);
}

std::size_t BitVector::weight() const noexcept {
    std::size_t w = 0;
    for (auto word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
}

bool BitVector::is_zero() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
}

bool BitVector::dot(const BitVector& other) const {
    if (other.len_ != len_) {
        throw DimensionError("dot of lengths " + std::to_string(len_) + " and " +
                             std::to_string(other.len_));
    }
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
}

BitVector& BitVector::operator^=(const BitVector& other) {
    if (other.len_ != len_) {
        throw DimensionError("xor of lengths " + std::to_string(len_) + " and " +
                             std::to_string(other.len_));
    }
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

BitVector BitVector::slice(std::size_t begin, std::size_t len) const {
    if (begin > len_ || len > len_ - begin) {
        throw DimensionError("slice [" + std::to_string(begin) + ", +" + std::to_string(len) +
                             ") out of range for length " + std::to_string(len_));
    }
    BitVector out(len);
    for (std::size_t i = 0; i < len; ++i) {
        if (get(begin + i)) out.set(i, true);
    }
    return out;
}

BitVector BitVector::concat(const BitVector& tail) const {
    BitVector out(len_ + tail.len_);
    std::copy(words_.begin(), words_.end(), out.words_.begin());
    for (std::size_t i = 0; i < tail.len_; ++i) {
        if (tail.get(i)) out.set(len_ + i, true);
    }
    return out;
}

std::uint64_t BitVector::to_u64() const {
    if (len_ > kWordBits) throw DimensionError("to_u64 needs size <= 64");
    return words_.empty() ? 0 : words_[0];
}

void BitVector::trim() noexcept {
    if (len_ % kWordBits != 0 && !words_.empty()) {
        words_.back() &= (std::uint64_t{1} << (len_ % kWordBits)) - 1;
    }
}

std::string BitVector::to_string() const {
    std::string s(len_, '0');
    for (std::size_t i = 0; i < len_; ++i) {
        if (get(i)) s[i] = '1';
    }
    return s;
}

std::vector<std::uint8_t> BitVector::to_bytes() const {
    std::vector<std::uint8_t> bytes((len_ + 7) / 8, 0);
    for (std::size_t j = 0; j < bytes.size(); ++j) {
        bytes[j] = static_cast<std::uint8_t>(words_[j / 8] >> (8 * (j % 8)));
    }
    return bytes;
}

BitVector BitVector::from_bytes(std::size_t len, std::span<const std::uint8_t> bytes) {
    if (bytes.size() != (len + 7) / 8) {
        throw ParseError("expected " + std::to_string((len + 7) / 8) + " bytes for " +
                         std::to_string(len) + " bits, got " + std::to_string(bytes.size()));
    }
    BitVector v(len);
    for (std::size_t j = 0; j < bytes.size(); ++j) {
        v.words_[j / 8] |= std::uint64_t{bytes[j]} << (8 * (j % 8));
    }
    const auto before = v.words_;
    v.trim();
    if (before != v.words_) throw ParseError("nonzero padding bits");
    return v;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : cols_(cols), rows_(rows, BitVector(cols)) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVector> out;
    std::size_t cols = rows.size() == 0 ? 0 : rows.begin()->size();
    for (auto r : rows) out.push_back(BitVector::from_string(r));
    return from_rows(std::move(out), cols);
}

BitMatrix BitMatrix::from_rows(std::vector<BitVector> rows, std::size_t cols) {
    for (const auto& r : rows) {
        if (r.size() != cols) throw DimensionError("ragged matrix rows");
    }
    BitMatrix m;
    m.cols_ = cols;
    m.rows_ = std::move(rows);
    return m;
}

BitMatrix BitMatrix::transpose() const {
    BitMatrix t(cols_, rows());
    for (std::size_t r = 0; r < rows(); ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) t.set(c, r, true);
        }
    }
    return t;
}

BitMatrix BitMatrix::row_block(std::size_t begin, std::size_t count) const {
    if (begin > rows() || count > rows() - begin) throw DimensionError("row block out of range");
    return from_rows({rows_.begin() + static_cast<std::ptrdiff_t>(begin),
                      rows_.begin() + static_cast<std::ptrdiff_t>(begin + count)},
                     cols_);
}

// --------------------------------------------------------------- arithmetic

BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v) {
    if (v.size() != m.cols()) {
        throw DimensionError("mat_vec_mul: matrix " + shape(m.rows(), m.cols()) +
                             " times vector of length " + std::to_string(v.size()));
    }
    BitVector out(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (m.row(i).dot(v)) out.set(i, true);
    }
    return out;
}

BitVector vec_mat_mul(const BitVector& u, const BitMatrix& m) {
    if (u.size() != m.rows()) {
        throw DimensionError("vec_mat_mul: vector of length " + std::to_string(u.size()) +
                             " times matrix " + shape(m.rows(), m.cols()));
    }
    BitVector out(m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (u.get(i)) out ^= m.row(i);
    }
    return out;
}

BitMatrix multiply(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("multiply: " + shape(a.rows(), a.cols()) + " by " +
                             shape(b.rows(), b.cols()));
    }
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) out.row(i) = vec_mat_mul(a.row(i), b);
    return out;
}

// -------------------------------------------------------------- elimination

AffineSolver::AffineSolver(const BitMatrix& h)
    : cols_(h.cols()), reduced_(h), transform_(BitMatrix::identity(h.rows())) {
    std::size_t next = 0;
    for (std::size_t c = 0; c < cols_ && next < reduced_.rows(); ++c) {
        std::size_t pivot = next;
        while (pivot < reduced_.rows() && !reduced_.get(pivot, c)) ++pivot;
        if (pivot == reduced_.rows()) continue;
        std::swap(reduced_.row(pivot), reduced_.row(next));
        std::swap(transform_.row(pivot), transform_.row(next));
        for (std::size_t r = 0; r < reduced_.rows(); ++r) {
            if (r != next && reduced_.get(r, c)) {
                reduced_.row(r) ^= reduced_.row(next);
                transform_.row(r) ^= transform_.row(next);
            }
        }
        pivots_.push_back(c);
        ++next;
    }

    std::vector<bool> is_pivot(cols_, false);
    for (auto c : pivots_) is_pivot[c] = true;
    for (std::size_t f = 0; f < cols_; ++f) {
        if (is_pivot[f]) continue;
        BitVector x(cols_);
        x.set(f, true);
        for (std::size_t i = 0; i < pivots_.size(); ++i) {
            if (reduced_.get(i, f)) x.set(pivots_[i], true);
        }
        kernel_.push_back(std::move(x));
    }
}

bool AffineSolver::consistent(const BitVector& target) const {
    const BitVector t = mat_vec_mul(transform_, target);
    for (std::size_t i = pivots_.size(); i < t.size(); ++i) {
        if (t.get(i)) return false;
    }
    return true;
}

BitVector AffineSolver::particular(const BitVector& target) const {
    if (target.size() != transform_.rows()) {
        throw DimensionError("affine target length " + std::to_string(target.size()) +
                             " does not match " + std::to_string(transform_.rows()) + " rows");
    }
    const BitVector t = mat_vec_mul(transform_, target);
    for (std::size_t i = pivots_.size(); i < t.size(); ++i) {
        if (t.get(i)) throw NoSolutionError("inconsistent linear system");
    }
    BitVector x(cols_);
    for (std::size_t i = 0; i < pivots_.size(); ++i) {
        if (t.get(i)) x.set(pivots_[i], true);
    }
    return x;
}

BitVector AffineSolver::solve(const BitVector& target, const BitVector& coeffs) const {
    if (coeffs.size() != kernel_.size()) {
        throw DimensionError("expected " + std::to_string(kernel_.size()) + " kernel coefficients");
    }
    BitVector x = particular(target);
    for (std::size_t i = 0; i < kernel_.size(); ++i) {
        if (coeffs.get(i)) x ^= kernel_[i];
    }
    return x;
}

BitVector AffineSolver::sample(const BitVector& target, PrngStream& rng) const {
    return solve(target, rng.next_bits(kernel_.size()));
}

std::size_t rank(const BitMatrix& m) { return AffineSolver(m).rank(); }

BitMatrix invert(const BitMatrix& m) {
    if (m.rows() != m.cols()) throw DimensionError("invert needs a square matrix, got " + shape(m.rows(), m.cols()));
    AffineSolver solver(m);
    if (solver.rank() < m.rows()) {
        throw SingularMatrixError("matrix is not invertible (rank " + std::to_string(solver.rank()) +
                                  " < " + std::to_string(m.rows()) + ")");
    }
    // Full rank: column j of the inverse solves m·x = e_j.
    BitMatrix inv_t(m.rows(), m.rows());
    for (std::size_t j = 0; j < m.rows(); ++j) {
        BitVector e(m.rows());
        e.set(j, true);
        inv_t.row(j) = solver.particular(e);
    }
    return inv_t.transpose();
}

std::vector<BitVector> kernel_basis(const BitMatrix& h) { return AffineSolver(h).kernel(); }

BitVector solve_affine(const BitMatrix& h, const BitVector& target, PrngStream& rng) {
    if (target.size() != h.rows()) {
        throw DimensionError("solve_affine: target length " + std::to_string(target.size()) +
                             " for matrix " + shape(h.rows(), h.cols()));
    }
    return AffineSolver(h).sample(target, rng);
}

BitMatrix random_full_rank(PrngStream& rng, std::size_t rows, std::size_t cols) {
    if (rows > cols) throw DimensionError("random_full_rank needs rows <= cols");
    for (;;) {
        BitMatrix m(rows, cols);
        for (std::size_t r = 0; r < rows; ++r) m.row(r) = rng.next_bits(cols);
        if (rank(m) == rows) return m;
    }
}

BitMatrix random_invertible(PrngStream& rng, std::size_t n) {
    if (n == 0) throw DimensionError("random_invertible needs n >= 1");
    return random_full_rank(rng, n, n);
}

// ---------------------------------------------------------------- text form

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kDigits[b >> 4]);
        out.push_back(kDigits[b & 0xF]);
    }
    return out;
}

std::vector<std::uint8_t> from_hex(std::string_view hex) {
    if (hex.size() % 2 != 0) throw ParseError("odd-length hex string");
    auto nibble = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError(std::string("bad hex digit '") + c + "'");
    };
    std::vector<std::uint8_t> out(hex.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(nibble(hex[2 * i]) << 4 | nibble(hex[2 * i + 1]));
    }
    return out;
}

std::string to_text(const BitVector& v) {
    return std::to_string(v.size()) + ":" + to_hex(v.to_bytes());
}

std::string to_text(const BitMatrix& m) {
    BitVector flat(m.rows() * m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) flat.set(r * m.cols() + c, true);
        }
    }
    return std::to_string(m.rows()) + "," + std::to_string(m.cols()) + ":" + to_hex(flat.to_bytes());
}

BitVector vector_from_text(std::string_view text) {
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) throw ParseError("vector text needs 'len:' header");
    const std::size_t len = parse_count(text.substr(0, colon));
    return BitVector::from_bytes(len, from_hex(text.substr(colon + 1)));
}

BitMatrix matrix_from_text(std::string_view text) {
    const auto colon = text.find(':');
    const auto comma = text.find(',');
    if (colon == std::string_view::npos || comma == std::string_view::npos || comma > colon) {
        throw ParseError("matrix text needs 'rows,cols:' header");
    }
    const std::size_t rows = parse_count(text.substr(0, comma));
    const std::size_t cols = parse_count(text.substr(comma + 1, colon - comma - 1));
    const BitVector flat = BitVector::from_bytes(rows * cols, from_hex(text.substr(colon + 1)));
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            if (flat.get(r * cols + c)) m.set(r, c, true);
        }
    }
    return m;
}

}  // namespace wiretap::gf2
