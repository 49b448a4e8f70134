#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "test_support.hpp"
#include "wiretap/equivocation.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/info.hpp"

using namespace wiretap;
using namespace wiretap::coding;
using channel::Bsc;
using gf2::BitMatrix;

namespace {

CosetCode random_code(std::uint64_t seed, std::size_t n, std::size_t k_fine, std::size_t k_coarse) {
    auto rng = test::stream(seed, "code");
    return random_coset_code(rng, {n, k_fine, k_coarse, k_fine - k_coarse, 0.01});
}

CosetCode hamming_plain() {
    return coset_code_from_nested(BitMatrix::from_strings({"1010101", "0110011", "0001111"}), BitMatrix(0, 7));
}

}  // namespace

TEST_CASE("exact equivocation of the two-bit example") {
    // h(3/8): at p_w = 1/4, z = 00 or 11 gives posterior (5/8, 3/8) ... averaged.
    const auto report = exact_equivocation(example1_code(), Bsc(0.25));
    CHECK(report.equivocation == doctest::Approx(0.954434002924965).epsilon(1e-12));
    CHECK(report.rate == 0.5);
    CHECK(report.method == EquivocationMethod::exact);
    CHECK(std::isnan(report.error_prob));
    CHECK(report.stderr_ == 0.0);
}

TEST_CASE("exact equivocation extremes") {
    for (std::uint64_t s = 0; s < 5; ++s) {
        const auto code = random_code(s, 10, 6, 3);
        CHECK(exact_equivocation(code, Bsc(0.5)).equivocation == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(exact_equivocation(code, Bsc(0.0)).equivocation == doctest::Approx(0.0).epsilon(1e-12));
    }
    CHECK(exact_equivocation(uncoded_code(), Bsc(0.11)).equivocation ==
          doctest::Approx(info::binary_entropy(0.11)).epsilon(1e-12));
}

TEST_CASE("exact equivocation agrees with the brute-force definition") {
    for (std::uint64_t s = 0; s < 12; ++s) {
        const std::size_t n = 4 + s % 5;
        const std::size_t k_fine = 2 + s % (n - 2);
        const std::size_t k_coarse = s % k_fine;
        const auto code = random_code(300 + s, n, k_fine, k_coarse);
        for (double p_w : {0.03, 0.2, 0.41}) {
            const double oracle = test::brute_force_equivocation(code, p_w);
            CHECK(exact_equivocation(code, Bsc(p_w)).equivocation == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
    CHECK(exact_equivocation(hamming_plain(), Bsc(0.1)).equivocation ==
          doctest::Approx(test::brute_force_equivocation(hamming_plain(), 0.1)).epsilon(1e-10));
}

TEST_CASE("exact equivocation grows with the wiretap noise") {
    const auto code = random_code(7, 12, 8, 4);
    double previous = -1.0;
    for (double p_w = 0.0; p_w <= 0.5; p_w += 0.05) {
        const double e = exact_equivocation(code, Bsc(p_w)).equivocation;
        CHECK(e >= previous - 1e-12);
        CHECK(e <= 1.0 + 1e-12);
        previous = e;
    }
}

TEST_CASE("exact equivocation limits") {
    const auto no_message = random_code(8, 8, 4, 4);
    CHECK_THROWS_AS(exact_equivocation(no_message, Bsc(0.1)), ParameterError);
    const auto long_block = random_code(9, 26, 10, 4);
    CHECK_THROWS_AS(exact_equivocation(long_block, Bsc(0.1)), CapabilityError);
    const auto wide = random_code(10, 24, 22, 4);
    CHECK_THROWS_AS(exact_equivocation(wide, Bsc(0.1)), CapabilityError);
}

TEST_CASE("Monte Carlo agrees with exact within its standard error") {
    for (std::uint64_t s = 0; s < 4; ++s) {
        const auto code = random_code(400 + s, 10, 7, 3);
        const Bsc wiretap(0.15);
        const double exact = exact_equivocation(code, wiretap).equivocation;
        auto rng = test::stream(500 + s);
        const auto mc = monte_carlo_equivocation(code, wiretap, 4000, rng, 2);
        CHECK(mc.method == EquivocationMethod::monte_carlo);
        CHECK(mc.stderr_ > 0.0);
        // +1e-12 so a zero-variance case is not judged on rounding
        CHECK(std::abs(mc.equivocation - exact) <= 3.0 * mc.stderr_ + 1e-12);
    }
    // zero variance: every posterior is uniform
    auto rng = test::stream(11);
    const auto flat = monte_carlo_equivocation(example1_code(), Bsc(0.5), 500, rng);
    CHECK(std::abs(flat.equivocation - 1.0) <= 3.0 * flat.stderr_ + 1e-12);
}

TEST_CASE("Monte Carlo standard error shrinks like 1/sqrt(N)") {
    const auto code = random_code(12, 10, 7, 3);
    auto a = test::stream(13);
    auto b = test::stream(14);
    const double small = monte_carlo_equivocation(code, Bsc(0.15), 1000, a).stderr_;
    const double large = monte_carlo_equivocation(code, Bsc(0.15), 4000, b).stderr_;
    CHECK(small / large == doctest::Approx(2.0).epsilon(0.3));
}

TEST_CASE("Monte Carlo is reproducible for a fixed (seed, workers)") {
    const auto code = random_code(15, 12, 8, 3);
    for (std::size_t workers : {1u, 3u}) {
        auto a = test::stream(16);
        auto b = test::stream(16);
        const auto ra = monte_carlo_equivocation(code, Bsc(0.2), 900, a, workers);
        const auto rb = monte_carlo_equivocation(code, Bsc(0.2), 900, b, workers);
        CHECK(ra.equivocation == rb.equivocation);
        CHECK(ra.stderr_ == rb.stderr_);
    }
    auto rng = test::stream(17);
    CHECK_THROWS_AS(monte_carlo_equivocation(code, Bsc(0.2), 0, rng), ParameterError);
    CHECK_THROWS_AS(monte_carlo_equivocation(code, Bsc(0.2), 100, rng, 0), ParameterError);
}

TEST_CASE("report CSV") {
    EquivocationReport report{0.5, 0.25, 0.125, EquivocationMethod::monte_carlo, 0.0625};
    CHECK(to_csv_row(report) == "0.5,0.25,0.125,monte-carlo,0.0625");
    CHECK(to_string(EquivocationMethod::exact) == "exact");
    CHECK(to_csv_row(EquivocationReport{}) == "0,0,nan,exact,0");
}

TEST_CASE("block_error_rate") {
    auto rng = test::stream(18);
    const auto code = random_code(19, 10, 6, 2);
    const auto clean = block_error_rate(code, Bsc(0.0), 500, rng);
    CHECK(clean.errors == 0);
    CHECK(clean.rate == 0.0);
    CHECK(clean.ci_high > 0.0);

    // [7,4] Hamming at p = 0.01: 1 - (0.99^7 + 7 * 0.01 * 0.99^6)
    constexpr double kHamming = 0.002031041634940084;
    constexpr std::size_t kTrials = 40000;
    const auto hamming = block_error_rate(hamming_plain(), Bsc(0.01), kTrials, rng);
    CHECK(std::abs(hamming.rate - kHamming) < 4.0 * std::sqrt(kHamming * (1 - kHamming) / kTrials));
    CHECK(hamming.ci_low <= hamming.rate);
    CHECK(hamming.ci_high >= hamming.rate);

    // pure noise: correct with probability 2^-k_msg
    const auto noise = block_error_rate(code, Bsc(0.5), 4000, rng);
    const double expected = 1.0 - 1.0 / 16.0;
    CHECK(std::abs(noise.rate - expected) < 4.0 * std::sqrt(expected * (1 - expected) / 4000));
}
