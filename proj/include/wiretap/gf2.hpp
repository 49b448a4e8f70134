#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace wiretap {

class PrngStream;

namespace gf2 {

/// Packed bit vector over GF(2). Bit i lives in word i/64 at position i%64
/// (index 0 is the least significant bit of word 0). Padding bits past
/// size() are always zero.
class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t len);

    /// Builds from a '0'/'1' string, index 0 first. Other characters throw.
    static BitVector from_string(std::string_view bits);
    static BitVector from_u64(std::size_t len, std::uint64_t value);

    std::size_t size() const noexcept { return len_; }
    bool empty() const noexcept { return len_ == 0; }

    bool get(std::size_t i) const;
    void set(std::size_t i, bool value);
    void flip(std::size_t i);

    std::size_t weight() const noexcept;
    bool is_zero() const noexcept;
    /// Inner product over GF(2).
    bool dot(const BitVector& other) const;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    /// Bits [begin, begin+len).
    BitVector slice(std::size_t begin, std::size_t len) const;
    BitVector concat(const BitVector& tail) const;
    /// Packed value of a vector with size() <= 64.
    std::uint64_t to_u64() const;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::span<std::uint64_t> mutable_words() noexcept { return words_; }
    /// Clears padding bits after raw word writes.
    void trim() noexcept;

    /// "0110..." with index 0 first.
    std::string to_string() const;

    /// Packed bytes (byte j holds bits 8j..8j+7, bit 8j in its LSB).
    std::vector<std::uint8_t> to_bytes() const;
    static BitVector from_bytes(std::size_t len, std::span<const std::uint8_t> bytes);

private:
    std::size_t len_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Dense row-major GF(2) matrix.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);
    static BitMatrix zero(std::size_t rows, std::size_t cols) { return {rows, cols}; }
    /// Rows as '0'/'1' strings of equal length.
    static BitMatrix from_strings(std::initializer_list<std::string_view> rows);
    static BitMatrix from_rows(std::vector<BitVector> rows, std::size_t cols);

    std::size_t rows() const noexcept { return rows_.size(); }
    std::size_t cols() const noexcept { return cols_; }

    bool get(std::size_t r, std::size_t c) const { return rows_.at(r).get(c); }
    void set(std::size_t r, std::size_t c, bool value) { rows_.at(r).set(c, value); }
    const BitVector& row(std::size_t r) const { return rows_.at(r); }
    BitVector& row(std::size_t r) { return rows_.at(r); }

    BitMatrix transpose() const;
    /// Rows [begin, begin+count).
    BitMatrix row_block(std::size_t begin, std::size_t count) const;

    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

private:
    std::size_t cols_ = 0;
    std::vector<BitVector> rows_;
};

/// result_i = XOR_j m[i][j] v_j. Realizes x·Hᵀ as mat_vec_mul(H, x).
BitVector mat_vec_mul(const BitMatrix& m, const BitVector& v);
/// Row vector times matrix: XOR of the rows of m selected by u.
BitVector vec_mat_mul(const BitVector& u, const BitMatrix& m);
BitMatrix multiply(const BitMatrix& a, const BitMatrix& b);

std::size_t rank(const BitMatrix& m);
/// Throws SingularMatrixError when rank < n.
BitMatrix invert(const BitMatrix& m);
/// Basis of {x : mat_vec_mul(h, x) == 0}; size is cols - rank(h).
std::vector<BitVector> kernel_basis(const BitMatrix& h);

/// Gauss-Jordan elimination of h, kept so that many right-hand sides can be
/// solved against the same matrix.
class AffineSolver {
public:
    explicit AffineSolver(const BitMatrix& h);

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t cols() const noexcept { return cols_; }
    std::size_t rows() const noexcept { return transform_.rows(); }
    const std::vector<BitVector>& kernel() const noexcept { return kernel_; }
    /// Pivot column of each nonzero row of the reduced matrix.
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    bool consistent(const BitVector& target) const;
    /// Solution with every free variable set to zero.
    BitVector particular(const BitVector& target) const;
    /// particular(target) XOR sum of kernel()[i] over the set bits of coeffs.
    BitVector solve(const BitVector& target, const BitVector& coeffs) const;
    /// Uniform draw from the solution set; consumes kernel().size() bits.
    BitVector sample(const BitVector& target, PrngStream& rng) const;

private:
    std::size_t cols_ = 0;
    BitMatrix reduced_;    // row-reduced h
    BitMatrix transform_;  // reduced_ = transform_ · h
    std::vector<std::size_t> pivots_;
    std::vector<BitVector> kernel_;
};

/// Uniformly random x with mat_vec_mul(h, x) == target.
BitVector solve_affine(const BitMatrix& h, const BitVector& target, PrngStream& rng);

/// Uniform full-row-rank rows x cols matrix (rejection sampling); rows <= cols.
BitMatrix random_full_rank(PrngStream& rng, std::size_t rows, std::size_t cols);
BitMatrix random_invertible(PrngStream& rng, std::size_t n);

// Text format: "len:hex" for vectors and "rows,cols:hex" for matrices, where
// hex is the lowercase packed byte string (matrices flattened row-major).
std::string to_text(const BitVector& v);
std::string to_text(const BitMatrix& m);
BitVector vector_from_text(std::string_view text);
BitMatrix matrix_from_text(std::string_view text);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::vector<std::uint8_t> from_hex(std::string_view hex);

}  // namespace gf2
}  // namespace wiretap
