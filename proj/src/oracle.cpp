#include "epsball/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "epsball/density.hpp"
#include "epsball/errors.hpp"

namespace epsball {

double isolated_radius(double rho, double min_step) {
    if (!(rho >= 1.0)) throw validation_error("isolated_radius: rho must be >= 1");
    if (!(min_step > 0.0)) throw validation_error("isolated_radius: min_step must be positive");

    // Largest N with exp(-rho*N) > min_step, nudged off any floating
    // boundary so it matches the sweep loop's own comparison exactly.
    double guess = std::floor(-std::log(min_step) / rho);
    if (guess < 0.0) guess = 0.0;
    std::size_t n = static_cast<std::size_t>(guess);
    while (n > 0 && !(std::exp(-rho * static_cast<double>(n)) > min_step)) --n;
    while (std::exp(-rho * static_cast<double>(n + 1)) > min_step) ++n;

    if (n == 0) return 0.0;
    const double q = std::exp(-rho);
    return (q - std::exp(-rho * static_cast<double>(n + 1))) / (1.0 - q);
}

namespace {

// Hand-rolled metric and kernel: the reference path shares no arithmetic
// with the production code it checks.
double euclid(const std::vector<double>& a, const std::vector<double>& b) {
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) sq += (a[k] - b[k]) * (a[k] - b[k]);
    return std::sqrt(sq);
}

double kernel(double r, double shape) {
    return 1.0 / std::sqrt(1.0 + shape * r * shape * r);
}

} // namespace

std::vector<double> fine_step_expand(const dataset& ds, const oracle_config& cfg) {
    if (!(cfg.fine_step > 0.0)) throw validation_error("fine_step must be positive");
    if (!(cfg.min_step > 0.0)) throw validation_error("min_step must be positive");

    const std::size_t n_pts = ds.size();
    double shape = cfg.shape;
    if (shape <= 0.0) shape = n_pts < 2 ? 1.0 : default_shape(ds);

    // Own-class density per point, plain sequential summation.
    std::vector<double> rho(n_pts, 0.0);
    for (std::size_t i = 0; i < n_pts; ++i)
        for (std::size_t j = 0; j < n_pts; ++j)
            if (ds[j].class_id == ds[i].class_id)
                rho[i] += kernel(euclid(ds[i].coords, ds[j].coords), shape);

    const double max_rho = *std::max_element(rho.begin(), rho.end());
    const double smallest_first_step = std::exp(-max_rho);
    if (cfg.fine_step * 100.0 > smallest_first_step) {
        std::ostringstream msg;
        msg << "fine_step " << cfg.fine_step << " is too coarse: it must be at least "
            << "100x smaller than the smallest first-sweep step " << smallest_first_step
            << " (max density " << max_rho << "); lower fine_step or widen the kernel";
        throw validation_error(msg.str());
    }

    std::vector<double> eps(n_pts, 0.0);
    std::vector<char> active(n_pts, 1);
    std::vector<double> allow(n_pts, 0.0);
    std::size_t n_active = n_pts;

    for (std::size_t n = 1; n_active > 0; ++n) {
        if (n > 1000000)
            throw std::runtime_error("fine_step_expand failed to terminate");

        // Stop rules mirror the strict sweep: collision against committed
        // radii, underflow on the raw decay budget, allowance capped at
        // half the remaining cross-class gap.
        for (std::size_t i = 0; i < n_pts; ++i) {
            if (!active[i]) continue;
            double gap = std::numeric_limits<double>::infinity();
            for (std::size_t j = 0; j < n_pts; ++j)
                if (ds[j].class_id != ds[i].class_id)
                    gap = std::min(gap, euclid(ds[i].coords, ds[j].coords) - eps[i] - eps[j]);
            if (gap <= 0.0) {
                active[i] = 0;
                --n_active;
                continue;
            }
            const double budget = std::exp(-rho[i] * static_cast<double>(n));
            if (budget <= cfg.min_step) {
                active[i] = 0;
                --n_active;
                continue;
            }
            allow[i] = std::min(budget, gap == std::numeric_limits<double>::infinity()
                                            ? budget
                                            : gap / 2.0);
        }

        // All points grow together, a fine_step at a time, until this
        // sweep's allowances are spent.
        bool growing = true;
        while (growing) {
            growing = false;
            for (std::size_t i = 0; i < n_pts; ++i) {
                if (!active[i] || allow[i] <= 0.0) continue;
                const double inc = std::min(cfg.fine_step, allow[i]);
                eps[i] += inc;
                allow[i] -= inc;
                if (allow[i] > 0.0) growing = true;
            }
        }
    }

    // Internal consistency flag: no radius may exceed its never-collides
    // ceiling.
    for (std::size_t i = 0; i < n_pts; ++i) {
        const double bound = isolated_radius(rho[i], cfg.min_step);
        if (eps[i] > bound + cfg.fine_step) {
            std::ostringstream msg;
            msg << "oracle budget mismatch at point " << i << ": radius " << eps[i]
                << " exceeds isolated bound " << bound;
            throw std::runtime_error(msg.str());
        }
    }
    return eps;
}

} // namespace epsball
