#pragma once

#include <cstddef>
#include <functional>

namespace wiretap::numeric {

struct QuadratureResult {
    double value = 0.0;
    double error_bound = 0.0;
    std::size_t intervals = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration on [a, b]: the
/// interval with the largest error estimate is bisected until the summed
/// estimate drops below abs_tol. Throws QuadratureError (carrying the best
/// estimate) after max_intervals subdivisions.
QuadratureResult integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                                    std::size_t max_intervals = 4000);

}  // namespace wiretap::numeric
