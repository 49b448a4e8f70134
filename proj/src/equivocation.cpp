#include "wiretap/equivocation.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <thread>
#include <vector>

#include "wiretap/errors.hpp"
#include "wiretap/format.hpp"

namespace wiretap::coding {

namespace {

// likelihood[d] = p^d (1-p)^(n-d)
std::vector<double> distance_likelihoods(std::size_t n, double p) {
    std::vector<double> table(n + 1);
    for (std::size_t d = 0; d <= n; ++d) {
        table[d] = std::pow(p, static_cast<double>(d)) * std::pow(1.0 - p, static_cast<double>(n - d));
    }
    return table;
}

// Unnormalized P(s, z) for every message s, into `joint`.
void accumulate_joint(const Codebook& book, const std::vector<double>& likelihood, std::uint64_t z,
                      std::vector<double>& joint) {
    std::fill(joint.begin(), joint.end(), 0.0);
    const auto& words = book.codewords();
    const auto& messages = book.messages();
    for (std::size_t i = 0; i < words.size(); ++i) {
        joint[messages[i]] += likelihood[static_cast<std::size_t>(std::popcount(z ^ words[i]))];
    }
}

// sum_s joint[s] log2(total / joint[s]); with the total normalized to 1 this is H(S | Z = z).
double weighted_entropy(const std::vector<double>& joint, double& total) {
    total = 0.0;
    for (double j : joint) total += j;
    double h = 0.0;
    for (double j : joint) {
        if (j > 0.0) h += j * std::log2(total / j);
    }
    return h;
}

void require_message(const CosetCode& code) {
    if (code.msg_len() == 0) throw ParameterError("equivocation is undefined for a code without message bits");
}

}  // namespace

std::string to_string(EquivocationMethod method) {
    return method == EquivocationMethod::exact ? "exact" : "monte-carlo";
}

std::string to_csv_row(const EquivocationReport& report) {
    return format_number(report.equivocation) + "," + format_number(report.rate) + "," +
           format_number(report.error_prob) + "," + to_string(report.method) + "," + format_number(report.stderr_);
}

EquivocationReport exact_equivocation(const CosetCode& code, const channel::Bsc& wiretap) {
    require_message(code);
    if (code.n() > kMaxExactBlockLength || code.k_fine() > kMaxEnumerationDim) {
        throw CapabilityError("exact equivocation needs n <= " + std::to_string(kMaxExactBlockLength) +
                              " and k_fine <= " + std::to_string(kMaxEnumerationDim) + " (got n=" +
                              std::to_string(code.n()) + ", k_fine=" + std::to_string(code.k_fine()) + ")");
    }
    const Codebook book(code);
    const auto likelihood = distance_likelihoods(code.n(), wiretap.p());

    // Coset representatives of the fine code: words vanishing on an information set.
    const gf2::AffineSolver reduced(gf2::BitMatrix::from_rows(code.fine_basis(), code.n()));
    std::vector<bool> is_pivot(code.n(), false);
    for (auto c : reduced.pivots()) is_pivot[c] = true;
    std::vector<std::size_t> free_positions;
    for (std::size_t c = 0; c < code.n(); ++c) {
        if (!is_pivot[c]) free_positions.push_back(c);
    }

    // Each representative stands for 2^k_fine outputs with identical
    // posterior entropy; joint[s] already carries that multiplicity since
    // P(s, z) = 2^-k_fine * sum over the coset of s.
    std::vector<double> joint(std::size_t{1} << code.msg_len());
    const std::size_t reps = std::size_t{1} << free_positions.size();
    double conditional = 0.0;
    double mass = 0.0;
    for (std::size_t r = 0; r < reps; ++r) {
        std::uint64_t z = 0;
        for (std::size_t b = 0; b < free_positions.size(); ++b) {
            if ((r >> b) & 1) z |= std::uint64_t{1} << free_positions[b];
        }
        accumulate_joint(book, likelihood, z, joint);
        double total = 0.0;
        conditional += weighted_entropy(joint, total);
        mass += total;
    }
    EquivocationReport report;
    // mass is 1 up to rounding; dividing by it keeps the sum a proper average.
    report.equivocation = std::clamp(conditional / mass / static_cast<double>(code.msg_len()), 0.0, 1.0);
    report.rate = code.rate();
    report.method = EquivocationMethod::exact;
    report.stderr_ = 0.0;
    return report;
}

EquivocationReport monte_carlo_equivocation(const CosetCode& code, const channel::Bsc& wiretap, std::size_t samples,
                                            PrngStream& rng, std::size_t workers) {
    require_message(code);
    if (samples == 0) throw ParameterError("monte_carlo_equivocation needs at least one sample");
    if (workers == 0) throw ParameterError("need at least one worker");
    const Codebook book(code);
    const auto likelihood = distance_likelihoods(code.n(), wiretap.p());

    struct Partial {
        double sum = 0.0;
        double sum_sq = 0.0;
    };
    std::vector<Partial> partials(workers);
    std::vector<PrngStream> streams;
    for (std::size_t w = 0; w < workers; ++w) streams.push_back(rng.split("mc-worker-" + std::to_string(w)));
    auto run = [&](std::size_t worker) {
        PrngStream& stream = streams[worker];
        const std::size_t begin = samples * worker / workers;
        const std::size_t end = samples * (worker + 1) / workers;
        std::vector<double> joint(std::size_t{1} << code.msg_len());
        Partial& acc = partials[worker];
        for (std::size_t i = begin; i < end; ++i) {
            const auto s = stream.next_bits(code.msg_len());
            const auto x = encode(code, s, stream);
            const auto z = channel::bsc_transmit(wiretap, x, stream);
            accumulate_joint(book, likelihood, z.to_u64(), joint);
            double total = 0.0;
            const double h = weighted_entropy(joint, total) / total;
            acc.sum += h;
            acc.sum_sq += h * h;
        }
    };
    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(run, w);
    }

    double sum = 0.0;
    double sum_sq = 0.0;
    for (const auto& p : partials) {
        sum += p.sum;
        sum_sq += p.sum_sq;
    }
    const double count = static_cast<double>(samples);
    const double mean = sum / count;
    const double variance = samples > 1 ? std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0)) : 0.0;
    const double k = static_cast<double>(code.msg_len());

    EquivocationReport report;
    report.equivocation = std::clamp(mean / k, 0.0, 1.0);
    report.rate = code.rate();
    report.method = EquivocationMethod::monte_carlo;
    report.stderr_ = std::sqrt(variance / count) / k;
    return report;
}

BlockErrorEstimate block_error_rate(const CosetCode& code, const channel::Bsc& main, std::size_t trials,
                                    PrngStream& rng) {
    if (trials == 0) throw ParameterError("block_error_rate needs at least one trial");
    const Codebook book(code);
    BlockErrorEstimate est;
    est.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto s = rng.next_bits(code.msg_len());
        const auto y = channel::bsc_transmit(main, encode(code, s, rng), rng);
        if (book.decode(y.to_u64()) != s.to_u64()) ++est.errors;
    }
    const double n = static_cast<double>(trials);
    const double phat = static_cast<double>(est.errors) / n;
    constexpr double z = 1.959963984540054;
    const double denom = 1.0 + z * z / n;
    const double center = (phat + z * z / (2.0 * n)) / denom;
    const double half = z * std::sqrt(phat * (1.0 - phat) / n + z * z / (4.0 * n * n)) / denom;
    est.rate = phat;
    est.ci_low = std::max(0.0, center - half);
    est.ci_high = std::min(1.0, center + half);
    return est;
}

}  // namespace wiretap::coding
