#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <set>

#include "run_support.hpp"
#include "test_support.hpp"
#include "wiretap/coset_code.hpp"

using namespace wiretap;
using test::parse_csv;
using test::run_cli;
using test::TempDir;

namespace {

constexpr const char* kCli = WIRETAP_CLI;
constexpr const char* kSeed = "00000000000000000000000000005eed";

test::RunResult run(const std::vector<std::string>& args, const TempDir& dir) { return run_cli(kCli, args, dir); }

double field(const std::string& csv, std::size_t row, std::size_t col) {
    return std::stod(parse_csv(csv).at(row).at(col));
}

std::string seed_hex(int i) {
    char buf[33];
    std::snprintf(buf, sizeof buf, "%032x", i);
    return buf;
}

}  // namespace

TEST_CASE("capacity") {
    TempDir dir;
    const auto split = run({"capacity", "--sigma-m-sq", "1", "--sigma-w-sq", "1"}, dir);
    REQUIRE(split.exit_code == 0);
    CHECK(parse_csv(split.out).at(0) == std::vector<std::string>{"p", "p_w", "h_p", "h_p_w", "c_s"});
    CHECK(field(split.out, 1, 4) == doctest::Approx(0.1635416252119316).epsilon(1e-12));

    const auto same = run({"capacity", "--sigma-m-sq", "1", "--sigma-w-sq", "0"}, dir);
    CHECK(field(same.out, 1, 4) == 0.0);

    const auto example = run({"capacity", "--override-p", "0", "--override-p-w", "0.25"}, dir);
    CHECK(field(example.out, 1, 4) == doctest::Approx(0.8112781244591328).epsilon(1e-12));
    CHECK(parse_csv(example.out).at(1).at(2) == "0");
}

TEST_CASE("errors go to stderr with exit code 1") {
    TempDir dir;
    for (const auto& args : std::vector<std::vector<std::string>>{
             {"capacity", "--sigma-m-sq", "-1"},
             {"capacity", "--override-p", "0.3", "--override-p-w", "0.2"},
             {"loss-curve", "--grid-start", "2", "--grid-stop", "1", "--grid-points", "3"},
             {"equivocation", "--example1", "--p_w", "0.3", "--mode", "mc"},
             {"equivocation", "--example1", "--p_w", "0.7"},
             {"equivocation", "--p_w", "0.1"},
             {"lpn", "keygen", "--seed", "00ff"},
             {"nonsense"},
         }) {
        const auto r = run(args, dir);
        CHECK(r.exit_code == 1);
        CHECK(r.out.empty());
        CHECK_FALSE(r.err.empty());
    }
}

TEST_CASE("loss-curve") {
    TempDir dir;
    const auto single = run({"loss-curve", "--grid-start", "1", "--grid-stop", "1", "--grid-points", "1"}, dir);
    REQUIRE(single.exit_code == 0);
    const auto rows = parse_csv(single.out);
    CHECK(rows.size() == 2);
    CHECK(rows[0] == std::vector<std::string>{"sigma_w_sq", "p", "p_w", "i_xw", "loss"});
    CHECK(std::stod(rows[1][4]) == doctest::Approx(0.5203843722844566).epsilon(1e-9));

    const auto a = dir.file("a.csv");
    const auto b = dir.file("b.csv");
    REQUIRE(run({"loss-curve", "--out", a}, dir).exit_code == 0);
    REQUIRE(run({"loss-curve", "--out", b}, dir).exit_code == 0);
    CHECK(test::slurp(a) == test::slurp(b));
    const auto curve = parse_csv(test::slurp(a));
    CHECK(curve.size() == 33);
    for (std::size_t i = 2; i < curve.size(); ++i) CHECK(std::stod(curve[i][4]) < std::stod(curve[i - 1][4]));
}

TEST_CASE("config file with flag precedence") {
    TempDir dir;
    const auto cfg = dir.file("run.cfg");
    std::ofstream(cfg) << "# recipe\nsigma-m-sq=3\nsigma-w-sq=2\n";
    const auto from_file = run({"capacity", "--config", cfg}, dir);
    const auto flags = run({"capacity", "--sigma-m-sq", "3", "--sigma-w-sq", "2"}, dir);
    CHECK(from_file.out == flags.out);
    const auto mixed = run({"capacity", "--config", cfg, "--sigma-m-sq", "1"}, dir);
    CHECK(mixed.out == run({"capacity", "--sigma-m-sq", "1", "--sigma-w-sq", "2"}, dir).out);

    const auto lpn_cfg = dir.file("lpn.cfg");
    std::ofstream(lpn_cfg) << "seed=" << kSeed << "\n";
    const auto key = run({"lpn", "keygen", "--config", lpn_cfg}, dir);
    CHECK(key.exit_code == 0);
    CHECK(key.out == test::slurp(WIRETAP_GOLDEN_DIR "/toy.key"));

    std::ofstream(dir.file("broken.cfg")) << "sigma-m-sq 3\n";
    CHECK(run({"capacity", "--config", dir.file("broken.cfg")}, dir).exit_code == 1);
}

TEST_CASE("equivocation") {
    TempDir dir;
    const auto exact = run({"equivocation", "--example1", "--p_w", "0.25", "--mode", "exact"}, dir);
    REQUIRE(exact.exit_code == 0);
    CHECK(parse_csv(exact.out).at(0).at(0) == "equivocation");
    CHECK(field(exact.out, 1, 0) == doctest::Approx(0.954).epsilon(0.001));
    CHECK(parse_csv(exact.out).at(1).at(2) == "nan");
    CHECK(field(run({"equivocation", "--example1", "--p_w", "0.5"}, dir).out, 1, 0) == doctest::Approx(1.0));

    const std::vector<std::string> mc = {"equivocation", "--example1", "--p_w", "0.2", "--mode", "mc",
                                         "--samples", "2000", "--seed", kSeed, "--workers", "2"};
    const auto first = run(mc, dir);
    REQUIRE(first.exit_code == 0);
    CHECK(first.out == run(mc, dir).out);
    CHECK(parse_csv(first.out).at(1).at(3) == "monte-carlo");

    auto rng = test::stream(1, "code");
    const auto code_file = dir.file("code.txt");
    std::ofstream(code_file) << coding::to_text(coding::random_coset_code(rng, {10, 6, 3, 3, 0.01}));
    const auto from_file =
        run({"equivocation", "--code", code_file, "--p_w", "0.1", "--p", "0.01", "--trials", "200", "--seed", kSeed},
            dir);
    REQUIRE(from_file.exit_code == 0);
    CHECK(field(from_file.out, 1, 1) == doctest::Approx(0.3));
    CHECK(field(from_file.out, 1, 2) >= 0.0);

    auto big_rng = test::stream(2, "code");
    std::ofstream(dir.file("big.txt")) << coding::to_text(coding::random_coset_code(big_rng, {30, 12, 4, 8, 0.01}));
    const auto too_big = run({"equivocation", "--code", dir.file("big.txt"), "--p_w", "0.1"}, dir);
    CHECK(too_big.exit_code == 1);
    CHECK(too_big.err.find("24") != std::string::npos);
}

TEST_CASE("quantizer-sweep") {
    TempDir dir;
    const auto r = run({"quantizer-sweep", "--sigma-m-sq", "1", "--sigma-w-sq", "1"}, dir);
    REQUIRE(r.exit_code == 0);
    const auto rows = parse_csv(r.out);
    CHECK(rows.at(0) == std::vector<std::string>{"levels", "i_x_zhat", "loss"});
    CHECK(rows.at(1).at(0) == "2");
    CHECK(std::abs(std::stod(rows[1][2])) < 1e-9);
    for (std::size_t i = 2; i < rows.size(); ++i) CHECK(std::stod(rows[i][2]) >= std::stod(rows[i - 1][2]) - 1e-12);
    CHECK(rows.back().at(0) == "inf");
    const auto curve = run({"loss-curve", "--grid-start", "1", "--grid-stop", "1", "--grid-points", "1"}, dir);
    CHECK(std::abs(std::stod(rows.back()[2]) - field(curve.out, 1, 4)) < 1e-3);

    const auto custom = run({"quantizer-sweep", "--levels", "2,6,10"}, dir);
    CHECK(parse_csv(custom.out).size() == 5);
    CHECK(run({"quantizer-sweep", "--levels", "1"}, dir).exit_code == 1);
    CHECK(run({"quantizer-sweep", "--levels", "3"}, dir).exit_code == 1);
}

TEST_CASE("lpn pipeline") {
    TempDir dir;
    const auto key = dir.file("key");
    const auto ct = dir.file("ct");
    REQUIRE(run({"lpn", "keygen", "--seed", kSeed, "--out", key}, dir).exit_code == 0);
    REQUIRE(run({"lpn", "encrypt", "--key", key, "--message", "0d", "--seed", kSeed, "--out", ct}, dir).exit_code == 0);
    CHECK(test::slurp(key) == test::slurp(WIRETAP_GOLDEN_DIR "/toy.key"));
    CHECK(test::slurp(ct) == test::slurp(WIRETAP_GOLDEN_DIR "/toy.ct"));
    const auto plain = run({"lpn", "decrypt", "--key", key, "--ct", ct}, dir);
    CHECK(plain.exit_code == 0);
    CHECK(plain.out == "0d\n");

    // 4-bit message: one byte, high nibble clear
    CHECK(run({"lpn", "encrypt", "--key", key, "--message", "1d", "--seed", kSeed}, dir).exit_code == 1);
    CHECK(run({"lpn", "encrypt", "--key", key, "--message", "0d0d", "--seed", kSeed}, dir).exit_code == 1);
    std::ofstream(dir.file("bad")) << "lpn-ct v1: 23,16\n";
    CHECK(run({"lpn", "decrypt", "--key", key, "--ct", dir.file("bad")}, dir).exit_code == 1);
    CHECK(run({"lpn", "decrypt", "--key", ct, "--ct", ct}, dir).exit_code == 1);
}

TEST_CASE("lpn decryption under the wrong key") {
    TempDir dir;
    const auto right = dir.file("right");
    const auto wrong = dir.file("wrong");
    REQUIRE(run({"lpn", "keygen", "--seed", seed_hex(1), "--out", right}, dir).exit_code == 0);
    REQUIRE(run({"lpn", "keygen", "--seed", seed_hex(2), "--out", wrong}, dir).exit_code == 0);
    int recovered = 0;
    int mismatched = 0;
    for (int i = 0; i < 100; ++i) {
        char msg[3];
        std::snprintf(msg, sizeof msg, "%02x", i % 16);
        const auto ct = dir.file("ct" + std::to_string(i));
        REQUIRE(run({"lpn", "encrypt", "--key", right, "--message", msg, "--seed", seed_hex(100 + i), "--out", ct}, dir)
                    .exit_code == 0);
        recovered += run({"lpn", "decrypt", "--key", right, "--ct", ct}, dir).out == std::string(msg) + "\n";
        mismatched += run({"lpn", "decrypt", "--key", wrong, "--ct", ct}, dir).out != std::string(msg) + "\n";
    }
    // right key fails only when the noise exceeds the radius (~2.6%)
    CHECK(recovered >= 90);
    // a wrong key matches by chance with probability about 1/16
    CHECK(mismatched >= 80);
}
