#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/gf2.hpp"
#include "wiretap/prng.hpp"

namespace wiretap::channel {

/// Standard normal CDF.
double normal_cdf(double x);
/// Standard normal density.
double normal_pdf(double x);

/// Antipodal signaling: bit 0 -> -1, bit 1 -> +1.
inline double to_symbol(bool bit) { return bit ? 1.0 : -1.0; }

/// Main channel adds N(0, sigma_m_sq); the wiretap sees that output plus
/// N(0, sigma_w_sq).
struct AwgnSplitChannel {
    double sigma_m_sq = 1.0;
    double sigma_w_sq = 1.0;

    /// Throws DomainError unless sigma_m_sq > 0 and sigma_w_sq >= 0.
    void validate() const;
    double sigma_total_sq() const { return sigma_m_sq + sigma_w_sq; }
};

class Bsc {
public:
    /// Throws DomainError unless 0 <= p <= 1/2.
    explicit Bsc(double p);
    double p() const noexcept { return p_; }

private:
    double p_;
};

struct Crossovers {
    double p;    // main channel after sign decision
    double p_w;  // wiretap after sign decision
};

/// p = Phi(-1/sigma_M), p_w = Phi(-1/sqrt(sigma_M^2 + sigma_W^2)).
Crossovers crossover_probabilities(const AwgnSplitChannel& ch);

/// Crossover of BSC(p) followed by BSC(p_y).
double bsc_concatenate(double p, double p_y);

/// BSC(p_y) with bsc_concatenate(p, p_y) == p_w. Throws DegradationError if p > p_w.
Bsc degrading_channel(double p, double p_w);

struct AnalogOutputs {
    std::vector<double> y;  // main receiver
    std::vector<double> w;  // eavesdropper
};

AnalogOutputs transmit(const AwgnSplitChannel& ch, const gf2::BitVector& x, PrngStream& rng);
gf2::BitVector bsc_transmit(const Bsc& bsc, const gf2::BitVector& x, PrngStream& rng);

/// A/D(L) converter: cell i is (t[i-1], t[i]] with unbounded extremes, so a
/// value exactly on a threshold belongs to the lower cell.
class Quantizer {
public:
    /// Throws DomainError unless thresholds are nonempty and strictly ascending.
    explicit Quantizer(std::vector<double> thresholds);

    std::size_t levels() const noexcept { return thresholds_.size() + 1; }
    const std::vector<double>& thresholds() const noexcept { return thresholds_; }
    std::size_t quantize(double w) const;

private:
    std::vector<double> thresholds_;
};

inline std::size_t quantize(const Quantizer& q, double w) { return q.quantize(w); }

/// L-1 evenly spaced thresholds from -half_range to +half_range inclusive;
/// L == 2 gives the sign quantizer (threshold 0).
Quantizer uniform_quantizer(std::size_t levels, double half_range);

/// Default sweep range 1 + 6 * sqrt(sigma_tot_sq).
double default_half_range(double sigma_tot_sq);

}  // namespace wiretap::channel
