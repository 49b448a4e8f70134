// wiretap: command-line front end for the analysis and LPN workflows.
//
// Every subcommand accepts --config FILE with key=value lines named after its
// long flags (e.g. "sigma-w-sq=2"); flags given on the command line win.

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wiretap/channels.hpp"
#include "wiretap/coset_code.hpp"
#include "wiretap/equivocation.hpp"
#include "wiretap/errors.hpp"
#include "wiretap/format.hpp"
#include "wiretap/info.hpp"
#include "wiretap/lpn.hpp"
#include "wiretap/prng.hpp"

namespace {

using namespace wiretap;
using wiretap::format_number;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

// Writes to `path`, or stdout when it is empty.
void emit(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout << data << std::flush;
        return;
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << data;
    out.close();
    if (!out) throw std::runtime_error("write to " + path + " failed");
}

std::vector<std::uint8_t> require_seed(const std::string& hex) {
    if (hex.empty()) throw ParameterError("--seed is required");
    auto seed = seed_from_hex(hex);
    if (seed.size() < PrngStream::kMinSeedBytes) throw ParameterError("--seed must be at least 16 bytes (32 hex digits)");
    return seed;
}

std::string join(std::initializer_list<std::string> fields) {
    std::string line;
    for (const auto& f : fields) {
        if (!line.empty()) line += ',';
        line += f;
    }
    return line + '\n';
}

struct CapacityArgs {
    double sigma_m_sq = 1.0;
    double sigma_w_sq = 1.0;
    std::optional<double> override_p;
    std::optional<double> override_p_w;
    std::string out;
};

void run_capacity(const CapacityArgs& a) {
    double p = 0.0, p_w = 0.0;
    if (!a.override_p || !a.override_p_w) {
        const auto c = channel::crossover_probabilities({a.sigma_m_sq, a.sigma_w_sq});
        p = c.p;
        p_w = c.p_w;
    }
    if (a.override_p) p = *a.override_p;
    if (a.override_p_w) p_w = *a.override_p_w;
    const double c_s = info::secrecy_capacity_bsc(p, p_w);
    emit(a.out, "p,p_w,h_p,h_p_w,c_s\n" + join({format_number(p), format_number(p_w),
                                                 format_number(info::binary_entropy(p)),
                                                 format_number(info::binary_entropy(p_w)), format_number(c_s)}));
}

struct LossCurveArgs {
    double sigma_m_sq = 1.0;
    double grid_start = 0.5;
    double grid_stop = 8.0;
    std::size_t grid_points = 32;
    std::string out;
};

void run_loss_curve(const LossCurveArgs& a) {
    if (a.grid_points == 0) throw ParameterError("--grid-points must be positive");
    if (a.grid_points == 1 && a.grid_start != a.grid_stop) {
        throw ParameterError("a single grid point needs --grid-start == --grid-stop");
    }
    std::vector<double> grid(a.grid_points);
    for (std::size_t i = 0; i < a.grid_points; ++i) {
        const double t = a.grid_points == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(a.grid_points - 1);
        grid[i] = a.grid_start + t * (a.grid_stop - a.grid_start);
    }
    std::string csv = "sigma_w_sq,p,p_w,i_xw,loss\n";
    for (const auto& pt : info::loss_curve(a.sigma_m_sq, grid)) {
        csv += join({format_number(pt.sigma_w_sq), format_number(pt.p), format_number(pt.p_w),
                     format_number(pt.i_xw), format_number(pt.loss)});
    }
    emit(a.out, csv);
}

struct EquivocationArgs {
    std::string code_file;
    bool example1 = false;
    double p_w = 0.0;
    std::string mode = "exact";
    std::size_t samples = 10000;
    std::size_t workers = 1;
    std::string seed;
    std::optional<double> p;
    std::size_t trials = 10000;
    std::string out;
};

void run_equivocation(const EquivocationArgs& a) {
    const auto code = a.example1 ? coding::example1_code() : coding::code_from_text(read_file(a.code_file));
    const channel::Bsc wiretap(a.p_w);
    coding::EquivocationReport report;
    if (a.mode == "exact") {
        report = coding::exact_equivocation(code, wiretap);
    } else {
        auto rng = prng_stream(require_seed(a.seed), "equivocation-mc");
        report = coding::monte_carlo_equivocation(code, wiretap, a.samples, rng, a.workers);
    }
    if (a.p) {
        auto rng = prng_stream(require_seed(a.seed), "equivocation-block-error");
        report.error_prob = coding::block_error_rate(code, channel::Bsc(*a.p), a.trials, rng).rate;
    }
    emit(a.out, std::string(coding::kReportCsvHeader) + '\n' + coding::to_csv_row(report) + '\n');
}

struct SweepArgs {
    double sigma_m_sq = 1.0;
    double sigma_w_sq = 1.0;
    std::vector<std::size_t> levels{2, 4, 8, 16, 32, 64, 128, 256};
    std::optional<double> half_range;
    std::string out;
};

void run_quantizer_sweep(const SweepArgs& a) {
    const channel::AwgnSplitChannel ch{a.sigma_m_sq, a.sigma_w_sq};
    const auto c = channel::crossover_probabilities(ch);
    const double total = ch.sigma_total_sq();
    const double half = a.half_range.value_or(channel::default_half_range(total));
    std::string csv = "levels,i_x_zhat,loss\n";
    for (std::size_t levels : a.levels) {
        // odd L has no threshold at 0, so it does not refine the sign quantizer
        if (levels % 2 != 0) throw ParameterError("--levels must be even, got " + std::to_string(levels));
        const double i = info::quantized_mutual_information(total, channel::uniform_quantizer(levels, half));
        csv += join({std::to_string(levels), format_number(i), format_number(info::equivocation_loss(c.p, c.p_w, i))});
    }
    const double i_inf = info::awgn_mutual_information(total);
    csv += join({"inf", format_number(i_inf), format_number(info::equivocation_loss(c.p, c.p_w, i_inf))});
    emit(a.out, csv);
}

gf2::BitVector message_from_hex(const std::string& hex, std::size_t bits) {
    const auto bytes = gf2::from_hex(hex);
    if (bytes.size() != (bits + 7) / 8) {
        throw DimensionError("message must be " + std::to_string((bits + 7) / 8) + " hex byte(s) for " +
                             std::to_string(bits) + " bits");
    }
    return gf2::BitVector::from_bytes(bits, bytes);
}

struct LpnArgs {
    lpn::LpnParams params = lpn::toy_params();
    std::string seed;
    std::string key_file;
    std::string ct_file;
    std::string message;
    std::string out;
};

void run_keygen(const LpnArgs& a) {
    auto rng = prng_stream(require_seed(a.seed), "lpn-keygen");
    emit(a.out, lpn::to_text(lpn::keygen(rng, a.params)));
}

void run_encrypt(const LpnArgs& a) {
    const auto key = lpn::key_from_text(read_file(a.key_file));
    const auto msg = message_from_hex(a.message, key.params.l);
    auto rng = prng_stream(require_seed(a.seed), "lpn-encrypt");
    emit(a.out, lpn::to_text(lpn::encrypt(key, msg, rng)));
}

void run_decrypt(const LpnArgs& a) {
    const auto key = lpn::key_from_text(read_file(a.key_file));
    const auto ct = lpn::ciphertext_from_text(read_file(a.ct_file));
    emit(a.out, gf2::to_hex(lpn::decrypt(key, ct).to_bytes()) + '\n');
}

std::string trim(const std::string& s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) return "";
    return s.substr(first, s.find_last_not_of(" \t\r") - first + 1);
}

// Expands --config FILE into the flags it names, skipping any flag already on
// the command line (flag > file > default). Appended after the subcommand so
// the innermost subcommand receives them.
std::vector<std::string> expand_config(int argc, char** argv) {
    std::vector<std::string> args(argv, argv + argc);
    std::string path;
    for (std::size_t i = 1; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    std::istringstream in(read_file(path));
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": expected key=value");
        }
        const std::string flag = "--" + trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const bool present = std::any_of(args.begin() + 1, args.end(), [&](const std::string& a) {
            return a == flag || a.rfind(flag + "=", 0) == 0;
        });
        if (present) continue;
        args.push_back(flag);
        if (value != "true") args.push_back(value);
    }
    return args;
}

void add_config(CLI::App* app) {
    app->add_option("--config", "key=value file named after the long flags; command-line flags take precedence")
        ->check(CLI::ExistingFile);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Wiretap channel coding analysis and LPN toy cryptosystem"};
    app.require_subcommand(1);

    CapacityArgs cap;
    auto* capacity = app.add_subcommand("capacity", "Crossovers and secrecy capacity of the split AWGN channel");
    capacity->add_option("--sigma-m-sq", cap.sigma_m_sq, "Main channel noise variance")->capture_default_str();
    capacity->add_option("--sigma-w-sq", cap.sigma_w_sq, "Extra wiretap noise variance")->capture_default_str();
    capacity->add_option("--override-p", cap.override_p, "Use this main crossover instead");
    capacity->add_option("--override-p-w", cap.override_p_w, "Use this wiretap crossover instead");
    capacity->add_option("--out", cap.out, "Output CSV (default stdout)");
    add_config(capacity);
    capacity->callback([&] { run_capacity(cap); });

    LossCurveArgs lc;
    auto* loss = app.add_subcommand("loss-curve", "Maximum equivocation loss over a wiretap variance grid");
    loss->add_option("--sigma-m-sq", lc.sigma_m_sq, "Main channel noise variance")->capture_default_str();
    loss->add_option("--grid-start", lc.grid_start)->capture_default_str();
    loss->add_option("--grid-stop", lc.grid_stop)->capture_default_str();
    loss->add_option("--grid-points", lc.grid_points)->capture_default_str();
    loss->add_option("--out", lc.out, "Output CSV (default stdout)");
    add_config(loss);
    loss->callback([&] { run_loss_curve(lc); });

    EquivocationArgs eq;
    auto* equiv = app.add_subcommand("equivocation", "Eavesdropper equivocation of a coset code over a BSC");
    auto* code_opt = equiv->add_option("--code", eq.code_file, "Code file")->check(CLI::ExistingFile);
    auto* ex1_opt = equiv->add_flag("--example1", eq.example1, "Use the two-bit example code");
    code_opt->excludes(ex1_opt);
    equiv->add_option("--p_w,--p-w", eq.p_w, "Wiretap crossover")->required();
    equiv->add_option("--mode", eq.mode)->check(CLI::IsMember({"exact", "mc"}))->capture_default_str();
    equiv->add_option("--samples", eq.samples, "Monte Carlo samples")->capture_default_str();
    equiv->add_option("--workers", eq.workers, "Monte Carlo worker threads")->capture_default_str();
    equiv->add_option("--seed", eq.seed, "Hex seed, at least 16 bytes");
    equiv->add_option("--p", eq.p, "Main crossover; also estimates the block error rate");
    equiv->add_option("--trials", eq.trials, "Block error trials")->capture_default_str();
    equiv->add_option("--out", eq.out, "Output CSV (default stdout)");
    add_config(equiv);
    equiv->callback([&] {
        if (!eq.example1 && eq.code_file.empty()) throw CLI::ValidationError("one of --code or --example1 is required");
        run_equivocation(eq);
    });

    SweepArgs sw;
    auto* sweep = app.add_subcommand("quantizer-sweep", "Eavesdropper information and loss per quantizer resolution");
    sweep->add_option("--sigma-m-sq", sw.sigma_m_sq)->capture_default_str();
    sweep->add_option("--sigma-w-sq", sw.sigma_w_sq)->capture_default_str();
    sweep->add_option("--levels", sw.levels, "Quantizer levels")->delimiter(',')->capture_default_str();
    sweep->add_option("--half-range", sw.half_range, "Quantizer half range (default 1 + 6 sigma)");
    sweep->add_option("--out", sw.out, "Output CSV (default stdout)");
    add_config(sweep);
    sweep->callback([&] { run_quantizer_sweep(sw); });

    LpnArgs lp;
    auto* lpn_cmd = app.add_subcommand("lpn", "LPN-based toy cryptosystem");
    lpn_cmd->require_subcommand(1);
    auto* keygen = lpn_cmd->add_subcommand("keygen", "Generate a shared key");
    keygen->add_option("--seed", lp.seed, "Hex seed, at least 16 bytes")->required();
    keygen->add_option("--out", lp.out, "Key file (default stdout)");
    keygen->add_option("--l", lp.params.l)->capture_default_str();
    keygen->add_option("--m", lp.params.m)->capture_default_str();
    keygen->add_option("--k", lp.params.k)->capture_default_str();
    keygen->add_option("--n", lp.params.n)->capture_default_str();
    keygen->add_option("--p", lp.params.p)->capture_default_str();
    add_config(keygen);
    keygen->callback([&] { run_keygen(lp); });

    auto* encrypt = lpn_cmd->add_subcommand("encrypt", "Encrypt an l-bit message given as packed hex");
    encrypt->add_option("--key", lp.key_file)->required()->check(CLI::ExistingFile);
    encrypt->add_option("--message", lp.message, "Packed hex, bit 0 in the LSB")->required();
    encrypt->add_option("--seed", lp.seed, "Hex seed, at least 16 bytes")->required();
    encrypt->add_option("--out", lp.out, "Ciphertext file (default stdout)");
    add_config(encrypt);
    encrypt->callback([&] { run_encrypt(lp); });

    auto* decrypt = lpn_cmd->add_subcommand("decrypt", "Decrypt a ciphertext; prints the message hex");
    decrypt->add_option("--key", lp.key_file)->required()->check(CLI::ExistingFile);
    decrypt->add_option("--ct", lp.ct_file)->required()->check(CLI::ExistingFile);
    decrypt->add_option("--out", lp.out, "Write the hex here instead of stdout");
    add_config(decrypt);
    decrypt->callback([&] { run_decrypt(lp); });

    try {
        auto args = expand_config(argc, argv);
        args.erase(args.begin());
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, std::cout, std::cerr);
        return code == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
