#pragma once

#include <cstddef>
#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

// Least-squares fit of volumes ~ alpha * densities - beta. When all
// densities are identical the slope is undefined: degenerate is set,
// alpha is NaN, beta holds the mean volume, and residuals are deviations
// from that mean.
struct linear_fit {
    double alpha;
    double beta;
    std::vector<double> residuals;
    double r_squared;
    bool degenerate;
};

struct diagnostics_report {
    std::vector<double> g_slack;   // per-point sum of negative cross-class slacks
    std::size_t worst_i = 0;       // most-violating cross-class pair
    std::size_t worst_j = 0;
    double worst_slack = 0.0;      // min over pairs of d - (eps_i + eps_j)
    std::vector<double> volumes;   // eps_i ^ D
    linear_fit fit;
};

// Per-point overlap audit: component i sums min(d(x_i,x_j) - (eps_i+eps_j), 0)
// over cross-class j. Zero means no overlap involving i; components are
// never positive. Throws validation_error on length mismatch or a negative
// radius.
std::vector<double> g_eval(const dataset& ds, const std::vector<double>& eps);

// Ball volume in the diagnostic's units: eps^D with no unit-ball constant
// (any constant factor would be absorbed by the fitted slope). Computed by
// repeated multiplication so it is deterministic everywhere.
double volume(double eps, std::size_t d);

// Ordinary least squares of volumes against densities for the linear
// throttling diagnostic. Requires equal lengths >= 2.
linear_fit fit_alpha_beta(const std::vector<double>& volumes,
                          const std::vector<double>& densities);

// Full report over a finished run: overlap audit, worst pair, volumes,
// and the volume-vs-density fit.
diagnostics_report build_report(const dataset& ds, const std::vector<double>& eps,
                                const std::vector<double>& densities);

} // namespace epsball
