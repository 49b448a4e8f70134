#include <cmath>
#include <map>
#include <set>

#include "doctest.h"
#include "test_support.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/coset_code.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/info.hpp"

using namespace wiretap;
using namespace wiretap::coding;
using gf2::BitMatrix;
using gf2::BitVector;

namespace {

BitMatrix hamming_parity() { return BitMatrix::from_strings({"1010101", "0110011", "0001111"}); }

// [7,4] Hamming fine code carrying all 4 information bits (no secrecy subcode).
CosetCode hamming_plain() { return coset_code_from_nested(hamming_parity(), BitMatrix(0, 7)); }

CosetCode random_code(std::uint64_t seed, std::size_t n, std::size_t k_fine, std::size_t k_coarse) {
    auto rng = test::stream(seed, "code");
    return random_coset_code(rng, {n, k_fine, k_coarse, k_fine - k_coarse, 0.01});
}

}  // namespace

TEST_CASE("params_from_channel") {
    // Floors of n(1 - h(p) - 2e) with h from scipy at Phi(-1), Phi(-1/sqrt 2).
    const auto params = params_from_channel(100000, 0.15865525393145707, 0.23975006109347674, 1e-4);
    CHECK(params.k_fine == 36871);
    CHECK(params.k_coarse == 20517);
    CHECK(params.k_msg == 16354);
    CHECK(params.rate() == doctest::Approx(0.16354));
    CHECK(params.rate() >= info::binary_entropy(0.23975006109347674) - info::binary_entropy(0.15865525393145707) - 3e-4);

    const auto useless_wiretap = params_from_channel(100000, 0.1, 0.5, 1e-6);
    CHECK(useless_wiretap.k_coarse == 0);
    CHECK(useless_wiretap.k_msg == useless_wiretap.k_fine);

    CHECK(params_from_channel(1000, 0.2, 0.2, 1e-3).k_msg == 0);

    CHECK_THROWS_AS(params_from_channel(1000, 0.3, 0.2, 1e-3), ParameterError);
    CHECK_THROWS_AS(params_from_channel(1000, 0.1, 0.2, 0.0), ParameterError);
    CHECK_THROWS_AS(params_from_channel(1000, 0.1, 0.2, 0.3), ParameterError);
}

TEST_CASE("CosetCode shape") {
    const auto code = random_code(1, 7, 4, 3);
    CHECK(code.h().rows() == 4);
    CHECK(code.h().cols() == 7);
    CHECK(code.zero_len() == 3);
    CHECK(code.msg_len() == 1);
    CHECK(code.k_coarse() == 3);
    CHECK(code.fine_basis().size() == 4);
    CHECK_THROWS_AS(CosetCode(BitMatrix::from_strings({"11", "11"}), 2), ParameterError);
    CHECK_THROWS_AS(CosetCode(BitMatrix::from_strings({"110", "011"}), 0), ParameterError);
}

TEST_CASE("random_coset_code always has full rank") {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const auto code = random_code(s, 10, 6, 2);
        REQUIRE(gf2::rank(code.h()) == 8);
    }
}

TEST_CASE("a code without message bits only encodes the empty message") {
    const auto code = random_code(2, 8, 4, 4);
    auto rng = test::stream(3);
    CHECK(code.msg_len() == 0);
    const auto x = encode(code, BitVector(), rng);
    CHECK(gf2::mat_vec_mul(code.h(), x).is_zero());
    CHECK_THROWS_AS(encode(code, BitVector(1), rng), DimensionError);
}

TEST_CASE("encode lands in the message coset") {
    auto rng = test::stream(4);
    for (std::uint64_t s = 0; s < 50; ++s) {
        const auto code = random_code(100 + s, 12, 8, 3);
        const auto msg = rng.next_bits(code.msg_len());
        const auto x = encode(code, msg, rng);
        CHECK(gf2::mat_vec_mul(code.h(), x) == BitVector(code.zero_len()).concat(msg));
        CHECK(code.message_of(x) == msg);
        CHECK(decode_ml(code, x, 0.1) == msg);
    }
}

TEST_CASE("encode is randomized") {
    const auto code = random_code(5, 16, 12, 8);
    auto rng = test::stream(6);
    const auto msg = rng.next_bits(code.msg_len());
    int same = 0;
    for (int i = 0; i < 20; ++i) same += encode(code, msg, rng) == encode(code, msg, rng);
    // collision probability 2^-8 per pair
    CHECK(same <= 2);
}

TEST_CASE("cosets of distinct messages are disjoint") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto code = random_code(200 + seed, 8, 6, 2);
        std::map<std::uint64_t, std::uint64_t> owner;
        for (std::uint64_t s = 0; s < (1u << code.msg_len()); ++s) {
            const auto msg = BitVector::from_u64(code.msg_len(), s);
            for (std::uint64_t c = 0; c < (1u << code.k_coarse()); ++c) {
                const auto x = encode_with(code, msg, BitVector::from_u64(code.k_coarse(), c)).to_u64();
                const auto [it, inserted] = owner.emplace(x, s);
                CHECK((inserted || it->second == s));
            }
        }
        CHECK(owner.size() == (std::size_t{1} << code.k_fine()));
    }
}

TEST_CASE("example1_code") {
    const auto code = example1_code();
    CHECK(code.n() == 2);
    CHECK(code.zero_len() == 0);
    CHECK(code.msg_len() == 1);
    CHECK(code.rate() == 0.5);
    auto rng = test::stream(7);
    int equal = 0;
    constexpr int kDraws = 10000;
    for (int i = 0; i < kDraws; ++i) {
        const auto zero = encode(code, BitVector::from_string("0"), rng).to_string();
        CHECK((zero == "00" || zero == "11"));
        const auto one = encode(code, BitVector::from_string("1"), rng).to_string();
        CHECK((one == "01" || one == "10"));
        equal += one == "01";
    }
    CHECK(std::abs(equal - kDraws / 2.0) < 5.0 * std::sqrt(kDraws / 4.0));
}

TEST_CASE("coset_code_from_nested") {
    // Hamming fine code with a 3-dimensional secrecy subcode: 2 cosets.
    const auto generator = BitMatrix::from_rows(gf2::kernel_basis(hamming_parity()), 7);
    const auto code = coset_code_from_nested(hamming_parity(), generator.row_block(0, 3));
    CHECK(code.h().rows() == 4);
    CHECK(code.k_fine() == 4);
    CHECK(code.k_coarse() == 3);
    CHECK(code.msg_len() == 1);
    for (std::size_t i = 0; i < 3; ++i) CHECK(code.message_of(generator.row(i)).is_zero());
    CHECK_FALSE(code.message_of(generator.row(3)).is_zero());

    CHECK_THROWS_AS(coset_code_from_nested(hamming_parity(), BitMatrix::from_strings({"1000000"})), ParameterError);
}

TEST_CASE("decode_ml corrects every single error of the Hamming code") {
    const auto code = hamming_plain();
    auto rng = test::stream(8);
    for (std::uint64_t s = 0; s < 16; ++s) {
        const auto msg = BitVector::from_u64(4, s);
        const auto x = encode(code, msg, rng);
        CHECK(decode_ml(code, x, 0.01) == msg);
        for (std::size_t i = 0; i < 7; ++i) {
            auto y = x;
            y.flip(i);
            CHECK(decode_ml(code, y, 0.01) == msg);
        }
    }
}

TEST_CASE("decode_ml breaks ties lexicographically") {
    // Repetition-free toy: fine code {000, 111} via parity rows, message = bit 0.
    const auto code = CosetCode(BitMatrix::from_strings({"110", "011"}), 3);  // zero_len 0, k_fine 3
    REQUIRE(code.k_fine() == 3);
    // Fine code is all of {0,1}^3; y is a codeword so no tie here.
    CHECK(decode_ml(code, BitVector::from_string("101"), 0.1).size() == 2);

    // Fine code {00, 11} (h = [1 1] as the zero block, then [1 0] as the message row).
    const auto tie = CosetCode(BitMatrix::from_strings({"11", "10"}), 1);
    REQUIRE(tie.k_fine() == 1);
    // y = 01 is at distance 1 from both 00 and 11; 00 is lexicographically smaller.
    CHECK(decode_ml(tie, BitVector::from_string("01"), 0.1) == tie.message_of(BitVector::from_string("00")));
    CHECK(decode_ml(tie, BitVector::from_string("10"), 0.1) == tie.message_of(BitVector::from_string("00")));
}

TEST_CASE("decode_ml budget and argument checks") {
    const auto big = random_code(9, 30, 22, 10);
    CHECK_THROWS_AS(decode_ml(big, BitVector(30), 0.1), CapabilityError);
    const auto code = hamming_plain();
    CHECK_THROWS_AS(decode_ml(code, BitVector(6), 0.1), DimensionError);
    CHECK_THROWS_AS(decode_ml(code, BitVector(7), 0.6), DomainError);
}

TEST_CASE("code text round trip") {
    const auto code = random_code(10, 12, 7, 3);
    const auto text = to_text(code);
    CHECK(text.rfind("12,7,3\n", 0) == 0);
    CHECK(code_from_text(text) == code);
    CHECK(to_text(example1_code()) == "2,2,1\n1,2:03\n");
    CHECK_THROWS_AS(code_from_text("12,7\n1,2:03\n"), ParseError);
    CHECK_THROWS_AS(code_from_text("3,2,1\n1,2:03\n"), ParseError);
}

TEST_CASE("cyclic codes") {
    const auto golay = cyclic_generator(23, 0xC75);
    CHECK(golay.rows() == 12);
    CHECK(gf2::rank(golay) == 12);
    const auto parity = parity_check_of(golay);
    CHECK(parity.rows() == 11);
    for (std::size_t i = 0; i < golay.rows(); ++i) CHECK(gf2::mat_vec_mul(parity, golay.row(i)).is_zero());
    CHECK_THROWS_AS(cyclic_generator(5, 0x40), ParameterError);
    CHECK_THROWS_AS(cyclic_generator(5, 0x2), ParameterError);
}
