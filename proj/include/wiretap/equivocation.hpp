#pragma once

#include <cstddef>
#include <limits>
#include <string>

#include "wiretap/channels.hpp"
#include "wiretap/coset_code.hpp"
#include "wiretap/prng.hpp"

namespace wiretap::coding {

enum class EquivocationMethod { exact, monte_carlo };

std::string to_string(EquivocationMethod method);

/// Eavesdropper equivocation H(S|Z^n)/K for a (code, wiretap) pair.
/// error_prob is NaN until a block error rate has been measured.
struct EquivocationReport {
    double equivocation = 0.0;
    double rate = 0.0;
    double error_prob = std::numeric_limits<double>::quiet_NaN();
    EquivocationMethod method = EquivocationMethod::exact;
    double stderr_ = 0.0;
};

inline constexpr const char* kReportCsvHeader = "equivocation,rate,error_prob,method,stderr";
std::string to_csv_row(const EquivocationReport& report);

/// Exact H(S|Z)/K for uniform messages and uniform coset members. Sums over
/// one representative per fine-code coset of the output space (the posterior
/// entropy is invariant under fine-codeword shifts), so the cost is O(2^n).
/// Requires n <= kMaxExactBlockLength, k_fine <= kMaxEnumerationDim and
/// msg_len >= 1; throws CapabilityError / ParameterError otherwise.
EquivocationReport exact_equivocation(const CosetCode& code, const channel::Bsc& wiretap);

/// Samples (s, x, z) from the model and averages the exact posterior entropy
/// H(S|Z=z). Work is split into `workers` blocks, worker i drawing from
/// rng.split("mc-worker-<i>"); the result is fixed by (stream state, samples,
/// workers).
EquivocationReport monte_carlo_equivocation(const CosetCode& code, const channel::Bsc& wiretap, std::size_t samples,
                                            PrngStream& rng, std::size_t workers = 1);

struct BlockErrorEstimate {
    double rate = 0.0;
    double ci_low = 0.0;   // Wilson 95% interval
    double ci_high = 0.0;
    std::size_t trials = 0;
    std::size_t errors = 0;
};

/// Fraction of trials where ML decoding of encode(s) sent over `main` does not return s.
BlockErrorEstimate block_error_rate(const CosetCode& code, const channel::Bsc& main, std::size_t trials,
                                    PrngStream& rng);

}  // namespace wiretap::coding
