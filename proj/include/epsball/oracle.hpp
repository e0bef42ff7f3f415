#pragma once

#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

// Reference-path configuration. fine_step quantizes growth; stopping
// semantics (collision, underflow threshold, half-gap clamp) mirror the
// strict expansion mode it validates. shape 0 means the median heuristic.
struct oracle_config {
    double fine_step = 1e-4;
    double min_step = 1e-20;
    double shape = 0.0;
};

// Closed-form radius of a point that never collides: the partial geometric
// sum of exp(-rho*n) over all n with exp(-rho*n) > min_step, i.e.
// (e^-rho - e^-rho(N+1)) / (1 - e^-rho). Strictly decreasing in rho;
// zero when even the first step is at or below min_step.
// Requires rho >= 1 (self-term guarantee) and min_step > 0.
double isolated_radius(double rho, double min_step);

// Brute-force reference for strict-mode expansion: sequential, no caching,
// no shared accumulators. Each virtual sweep grants every active point an
// allowance of min(exp(-rho*n), half its remaining cross-class gap), then
// all points grow simultaneously in fine_step increments until allowances
// are spent. Quadratic per sweep; intended for datasets of ~100 points or
// fewer. Throws validation_error if fine_step is not at least 100x smaller
// than the smallest first-sweep step exp(-max rho), and a logic flag error
// if any radius ends above its isolated-point bound.
std::vector<double> fine_step_expand(const dataset& ds, const oracle_config& cfg);

} // namespace epsball
