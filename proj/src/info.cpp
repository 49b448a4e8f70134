#include "wiretap/info.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "wiretap/errors.hpp"
#include "wiretap/quadrature.hpp"

namespace wiretap::info {

namespace {

constexpr double kSumTolerance = 1e-12;

double xlog2x(double x) { return x > 0.0 ? x * std::log2(x) : 0.0; }

// P(lo < x + N(0, sigma^2) <= hi), evaluated on the side of the mean that
// avoids cancellation.
double interval_mass(double lo, double hi, double mean, double sigma) {
    const double a = (lo - mean) / sigma;
    const double b = (hi - mean) / sigma;
    if (a > 0.0) return channel::normal_cdf(-a) - channel::normal_cdf(-b);
    return channel::normal_cdf(b) - channel::normal_cdf(a);
}

double bernoulli_objective(const Transition& main, const Transition& wiretap, double q) {
    const std::vector<double> input = {1.0 - q, q};
    return mutual_information_discrete({input, main}) - mutual_information_discrete({input, wiretap});
}

}  // namespace

void DiscreteChannelSpec::validate() const {
    if (input_dist.empty() || transition.size() != input_dist.size()) {
        throw DomainError("transition needs one row per input symbol");
    }
    double input_sum = 0.0;
    for (double p : input_dist) {
        if (!(p >= 0.0)) throw DomainError("input probabilities must be nonnegative");
        input_sum += p;
    }
    if (std::abs(input_sum - 1.0) > kSumTolerance) throw DomainError("input distribution must sum to 1");
    const std::size_t outputs = transition.front().size();
    for (const auto& row : transition) {
        if (row.size() != outputs || outputs == 0) throw DomainError("transition rows must share a nonzero width");
        double row_sum = 0.0;
        for (double p : row) {
            if (!(p >= 0.0)) throw DomainError("transition probabilities must be nonnegative");
            row_sum += p;
        }
        if (std::abs(row_sum - 1.0) > kSumTolerance) throw DomainError("transition rows must sum to 1");
    }
}

double binary_entropy(double p) {
    if (!(p >= 0.0 && p <= 1.0)) throw DomainError("binary_entropy needs p in [0, 1], got " + std::to_string(p));
    if (p == 0.0 || p == 1.0) return 0.0;
    return -xlog2x(p) - xlog2x(1.0 - p);
}

double mutual_information_discrete(const DiscreteChannelSpec& spec) {
    spec.validate();
    const std::size_t outputs = spec.transition.front().size();
    std::vector<double> output_dist(outputs, 0.0);
    double conditional = 0.0;
    for (std::size_t x = 0; x < spec.input_dist.size(); ++x) {
        for (std::size_t y = 0; y < outputs; ++y) {
            output_dist[y] += spec.input_dist[x] * spec.transition[x][y];
            conditional -= spec.input_dist[x] * xlog2x(spec.transition[x][y]);
        }
    }
    double output_entropy = 0.0;
    for (double p : output_dist) output_entropy -= xlog2x(p);
    return output_entropy - conditional;
}

Transition bsc_transition(double p) {
    const channel::Bsc bsc(p);
    return {{1.0 - bsc.p(), bsc.p()}, {bsc.p(), 1.0 - bsc.p()}};
}

double secrecy_capacity_bsc(double p, double p_w) {
    if (!(p >= 0.0 && p_w <= 0.5 && p <= p_w)) {
        throw DegradationError("secrecy_capacity_bsc needs 0 <= p <= p_w <= 1/2");
    }
    return binary_entropy(p_w) - binary_entropy(p);
}

SecrecySearchResult secrecy_capacity_search(const Transition& main, const Transition& wiretap, double grid_step) {
    if (main.size() != 2 || wiretap.size() != 2) throw DomainError("secrecy search needs binary-input channels");
    if (!(grid_step > 0.0 && grid_step < 0.5)) throw DomainError("grid_step must lie in (0, 1/2)");

    const auto steps = static_cast<std::size_t>(std::ceil(1.0 / grid_step));
    double best_q = 0.0;
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i <= steps; ++i) {
        const double q = std::min(1.0, static_cast<double>(i) * grid_step);
        const double value = bernoulli_objective(main, wiretap, q);
        if (value > best) {
            best = value;
            best_q = q;
        }
    }

    // Golden-section refinement on the bracket around the grid argmax.
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double lo = std::max(0.0, best_q - grid_step);
    double hi = std::min(1.0, best_q + grid_step);
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = bernoulli_objective(main, wiretap, c);
    double fd = bernoulli_objective(main, wiretap, d);
    for (int iter = 0; iter < 60 && hi - lo > 1e-12; ++iter) {
        if (fc > fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = bernoulli_objective(main, wiretap, c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = bernoulli_objective(main, wiretap, d);
        }
    }
    const double refined_q = 0.5 * (lo + hi);
    const double refined = bernoulli_objective(main, wiretap, refined_q);
    if (refined > best) {
        best = refined;
        best_q = refined_q;
    }
    return {std::max(0.0, best), {1.0 - best_q, best_q}};
}

double mixture_density(double sigma_tot_sq, double w) {
    if (!(sigma_tot_sq > 0.0)) throw DomainError("sigma_tot_sq must be positive");
    const double sigma = std::sqrt(sigma_tot_sq);
    return (channel::normal_pdf((w + 1.0) / sigma) + channel::normal_pdf((w - 1.0) / sigma)) / (2.0 * sigma);
}

AwgnInformation awgn_mutual_information_detail(double sigma_tot_sq, double abs_tol) {
    if (!(sigma_tot_sq > 0.0)) throw DomainError("sigma_tot_sq must be positive");
    const double sigma = std::sqrt(sigma_tot_sq);
    const double reach = 1.0 + 8.0 * sigma;
    auto integrand = [sigma_tot_sq](double w) {
        const double f = mixture_density(sigma_tot_sq, w);
        return f > 0.0 ? -f * std::log2(f) : 0.0;
    };
    const auto entropy = numeric::integrate_adaptive(integrand, -reach, reach, abs_tol);
    const double noise_entropy = 0.5 * std::log2(2.0 * std::numbers::pi * std::numbers::e * sigma_tot_sq);
    return {entropy.value - noise_entropy, entropy.error_bound};
}

double awgn_mutual_information(double sigma_tot_sq) {
    return std::clamp(awgn_mutual_information_detail(sigma_tot_sq).value, 0.0, 1.0);
}

Transition quantizer_transition(double sigma_tot_sq, const channel::Quantizer& q) {
    if (!(sigma_tot_sq > 0.0)) throw DomainError("sigma_tot_sq must be positive");
    const double sigma = std::sqrt(sigma_tot_sq);
    const auto& t = q.thresholds();
    constexpr double kInf = std::numeric_limits<double>::infinity();
    Transition rows(2, std::vector<double>(q.levels()));
    for (std::size_t x = 0; x < 2; ++x) {
        const double mean = channel::to_symbol(x == 1);
        for (std::size_t cell = 0; cell < q.levels(); ++cell) {
            const double lo = cell == 0 ? -kInf : t[cell - 1];
            const double hi = cell == t.size() ? kInf : t[cell];
            rows[x][cell] = interval_mass(lo, hi, mean, sigma);
        }
    }
    return rows;
}

double quantized_mutual_information(double sigma_tot_sq, const channel::Quantizer& q) {
    return mutual_information_discrete({{0.5, 0.5}, quantizer_transition(sigma_tot_sq, q)});
}

double equivocation_loss(double p, double p_w, double i_x_zhat) {
    if (!(p >= 0.0 && p_w <= 0.5)) throw DomainError("crossovers must lie in [0, 1/2]");
    if (p > p_w) throw DegradationError("equivocation_loss needs p < p_w");
    if (p == p_w) throw DomainError("equivocation_loss undefined for p == p_w: no secrecy to lose");
    if (!(i_x_zhat >= 0.0 && i_x_zhat <= 1.0)) throw DomainError("I(X;Z_hat) must lie in [0, 1]");
    const double h_w = binary_entropy(p_w);
    double numerator = h_w - 1.0 + i_x_zhat;
    if (numerator < 0.0) {
        if (numerator < -1e-12) throw DomainError("I(X;Z_hat) is below the hard-decision value 1 - h(p_w)");
        numerator = 0.0;
    }
    return std::min(1.0, numerator / (h_w - binary_entropy(p)));
}

double max_equivocation_loss(double sigma_m_sq, double sigma_w_sq) {
    if (!(sigma_m_sq > 0.0 && sigma_w_sq > 0.0)) throw DomainError("variances must be positive");
    const auto [p, p_w] = channel::crossover_probabilities({sigma_m_sq, sigma_w_sq});
    return equivocation_loss(p, p_w, awgn_mutual_information(sigma_m_sq + sigma_w_sq));
}

std::vector<LossCurvePoint> loss_curve(double sigma_m_sq, const std::vector<double>& sigma_w_grid) {
    if (sigma_w_grid.empty()) throw DomainError("loss_curve needs a nonempty grid");
    for (std::size_t i = 0; i < sigma_w_grid.size(); ++i) {
        if (!(sigma_w_grid[i] > 0.0)) throw DomainError("grid values must be positive");
        if (i > 0 && !(sigma_w_grid[i] > sigma_w_grid[i - 1])) throw DomainError("grid must be ascending");
    }
    std::vector<LossCurvePoint> curve;
    curve.reserve(sigma_w_grid.size());
    for (double sigma_w_sq : sigma_w_grid) {
        const auto [p, p_w] = channel::crossover_probabilities({sigma_m_sq, sigma_w_sq});
        const double i_xw = awgn_mutual_information(sigma_m_sq + sigma_w_sq);
        curve.push_back({sigma_w_sq, p, p_w, i_xw, equivocation_loss(p, p_w, i_xw)});
    }
    return curve;
}

}  // namespace wiretap::info
