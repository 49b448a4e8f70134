#pragma once

#include <cstddef>
#include <vector>

#include "wiretap/channels.hpp"

namespace wiretap::info {

/// Row-stochastic matrix P(output | input).
using Transition = std::vector<std::vector<double>>;

struct DiscreteChannelSpec {
    std::vector<double> input_dist;
    Transition transition;

    /// Throws DomainError on negative entries or rows/inputs not summing to 1 (1e-12).
    void validate() const;
};

/// Entropy of a Bernoulli(p) bit, in bits. Throws DomainError outside [0, 1].
double binary_entropy(double p);

/// I(X;Y) = H(Y) - H(Y|X) in bits.
double mutual_information_discrete(const DiscreteChannelSpec& spec);

/// Transition matrix of BSC(p) with inputs/outputs ordered (0, 1).
Transition bsc_transition(double p);

/// h(p_w) - h(p) for a degraded BSC pair. Throws DegradationError unless p <= p_w <= 1/2.
double secrecy_capacity_bsc(double p, double p_w);

struct SecrecySearchResult {
    double capacity = 0.0;
    /// Optimal Bernoulli input, {P(X=0), P(X=1)}.
    std::vector<double> input_dist;
};

/// max over Bernoulli(q) inputs of I(X;Y) - I(X;Z): a grid sweep with step
/// grid_step followed by one golden-section pass around the best grid point.
/// Both transitions must have two input rows.
SecrecySearchResult secrecy_capacity_search(const Transition& main, const Transition& wiretap, double grid_step);

/// Density of W = X + N(0, sigma_tot_sq) for equiprobable X in {-1, +1}.
double mixture_density(double sigma_tot_sq, double w);

struct AwgnInformation {
    double value = 0.0;        // I(X;W) in bits
    double error_bound = 0.0;  // quadrature error estimate on the entropy integral
};

inline constexpr double kEntropyTolerance = 1e-9;

/// I(X;W) = h(W) - 1/2 log2(2 pi e sigma_tot_sq), with the mixture entropy
/// integrated adaptively over [-(1 + 8 sigma), 1 + 8 sigma].
AwgnInformation awgn_mutual_information_detail(double sigma_tot_sq, double abs_tol = kEntropyTolerance);
double awgn_mutual_information(double sigma_tot_sq);

/// P(cell | x) for x = -1 (row 0) and x = +1 (row 1).
Transition quantizer_transition(double sigma_tot_sq, const channel::Quantizer& q);

/// I(X; [W]_Q) with equiprobable inputs.
double quantized_mutual_information(double sigma_tot_sq, const channel::Quantizer& q);

/// (h(p_w) - 1 + i_x_zhat) / (h(p_w) - h(p)), clamped to [0, 1].
/// Throws DomainError when p == p_w and DegradationError when p > p_w.
double equivocation_loss(double p, double p_w, double i_x_zhat);

/// equivocation_loss with I(X;Z_hat) replaced by its L -> infinity limit I(X;W).
double max_equivocation_loss(double sigma_m_sq, double sigma_w_sq);

struct LossCurvePoint {
    double sigma_w_sq = 0.0;
    double p = 0.0;
    double p_w = 0.0;
    double i_xw = 0.0;
    double loss = 0.0;
};

/// One point per entry of an ascending, positive grid of wiretap variances.
std::vector<LossCurvePoint> loss_curve(double sigma_m_sq, const std::vector<double>& sigma_w_grid);

}  // namespace wiretap::info
