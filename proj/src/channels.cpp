#include "wiretap/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "wiretap/errors.hpp"

namespace wiretap::channel {

namespace {

void check_probability(double p, const char* name) {
    if (!(p >= 0.0 && p <= 0.5)) {
        throw DomainError(std::string(name) + " must lie in [0, 1/2], got " + std::to_string(p));
    }
}

}  // namespace

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

void AwgnSplitChannel::validate() const {
    if (!(sigma_m_sq > 0.0)) throw DomainError("sigma_m_sq must be positive");
    if (!(sigma_w_sq >= 0.0)) throw DomainError("sigma_w_sq must be nonnegative");
}

Bsc::Bsc(double p) : p_(p) { check_probability(p, "BSC crossover"); }

Crossovers crossover_probabilities(const AwgnSplitChannel& ch) {
    ch.validate();
    return {normal_cdf(-1.0 / std::sqrt(ch.sigma_m_sq)), normal_cdf(-1.0 / std::sqrt(ch.sigma_total_sq()))};
}

double bsc_concatenate(double p, double p_y) {
    check_probability(p, "p");
    check_probability(p_y, "p_y");
    return p * (1.0 - p_y) + (1.0 - p) * p_y;
}

Bsc degrading_channel(double p, double p_w) {
    check_probability(p, "p");
    if (!(p_w >= 0.0 && p_w < 0.5)) throw DomainError("p_w must lie in [0, 1/2)");
    if (p > p_w) {
        throw DegradationError("wiretap crossover " + std::to_string(p_w) + " is below main crossover " +
                               std::to_string(p));
    }
    // p <= p_w < 1/2 keeps the result inside [0, 1/2).
    return Bsc(std::clamp((p_w - p) / (1.0 - 2.0 * p), 0.0, 0.5));
}

AnalogOutputs transmit(const AwgnSplitChannel& ch, const gf2::BitVector& x, PrngStream& rng) {
    ch.validate();
    const double sigma_m = std::sqrt(ch.sigma_m_sq);
    const double sigma_w = std::sqrt(ch.sigma_w_sq);
    AnalogOutputs out;
    out.y.resize(x.size());
    out.w.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out.y[i] = to_symbol(x.get(i)) + sigma_m * rng.gaussian();
        out.w[i] = out.y[i] + sigma_w * rng.gaussian();
    }
    return out;
}

gf2::BitVector bsc_transmit(const Bsc& bsc, const gf2::BitVector& x, PrngStream& rng) {
    return x ^ rng.bernoulli_bits(x.size(), bsc.p());
}

Quantizer::Quantizer(std::vector<double> thresholds) : thresholds_(std::move(thresholds)) {
    if (thresholds_.empty()) throw DomainError("quantizer needs at least one threshold");
    for (std::size_t i = 1; i < thresholds_.size(); ++i) {
        if (!(thresholds_[i - 1] < thresholds_[i])) throw DomainError("quantizer thresholds must be strictly ascending");
    }
}

std::size_t Quantizer::quantize(double w) const {
    return static_cast<std::size_t>(std::lower_bound(thresholds_.begin(), thresholds_.end(), w) - thresholds_.begin());
}

Quantizer uniform_quantizer(std::size_t levels, double half_range) {
    if (levels < 2) throw DomainError("quantizer needs at least 2 levels");
    if (!(half_range > 0.0)) throw DomainError("half_range must be positive");
    if (levels == 2) return Quantizer({0.0});
    const std::size_t gaps = levels - 2;
    std::vector<double> t(levels - 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        // Computed from both ends so the grid is exactly antisymmetric.
        t[i] = half_range * (static_cast<double>(2 * i) - static_cast<double>(gaps)) / static_cast<double>(gaps);
    }
    return Quantizer(std::move(t));
}

double default_half_range(double sigma_tot_sq) { return 1.0 + 6.0 * std::sqrt(sigma_tot_sq); }

}  // namespace wiretap::channel
