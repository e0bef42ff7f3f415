#include "epsball/diagnostics.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "epsball/errors.hpp"
#include "epsball/fsum.hpp"

namespace epsball {

std::vector<double> g_eval(const dataset& ds, const std::vector<double>& eps) {
    if (eps.size() != ds.size()) {
        std::ostringstream msg;
        msg << "g_eval: " << eps.size() << " radii for " << ds.size() << " points";
        throw validation_error(msg.str());
    }
    for (double e : eps)
        if (!(e >= 0.0) || !std::isfinite(e))
            throw validation_error("g_eval: radii must be finite and nonnegative");

    std::vector<double> g(ds.size(), 0.0);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        exact_sum s;
        for (std::size_t j = 0; j < ds.size(); ++j) {
            if (j == i || ds[j].class_id == ds[i].class_id) continue;
            const double slack = distance(ds[i].coords, ds[j].coords) - (eps[i] + eps[j]);
            if (slack < 0.0) s.add(slack);
        }
        g[i] = s.value();
    }
    return g;
}

double volume(double eps, std::size_t d) {
    if (!(eps >= 0.0)) throw validation_error("volume: radius must be nonnegative");
    // Plain repeated multiplication: deterministic on every platform, and
    // exactly reproducible by the obvious cross-check.
    double v = 1.0;
    for (std::size_t k = 0; k < d; ++k) v *= eps;
    return v;
}

linear_fit fit_alpha_beta(const std::vector<double>& volumes,
                          const std::vector<double>& densities) {
    if (volumes.size() != densities.size())
        throw validation_error("fit_alpha_beta: input lengths differ");
    if (volumes.size() < 2)
        throw validation_error("fit_alpha_beta: need at least 2 observations");

    const std::size_t n = volumes.size();
    const double nn = static_cast<double>(n);

    exact_sum sx, sy;
    for (std::size_t i = 0; i < n; ++i) {
        sx.add(densities[i]);
        sy.add(volumes[i]);
    }
    const double mean_x = sx.value() / nn;
    const double mean_y = sy.value() / nn;

    bool all_equal = true;
    for (std::size_t i = 1; i < n; ++i)
        if (densities[i] != densities[0]) all_equal = false;

    linear_fit fit;
    if (all_equal) {
        // Slope is unidentifiable; report the constant model instead.
        fit.degenerate = true;
        fit.alpha = std::numeric_limits<double>::quiet_NaN();
        fit.beta = mean_y;
        fit.residuals.resize(n);
        bool flat = true;
        for (std::size_t i = 0; i < n; ++i) {
            fit.residuals[i] = volumes[i] - mean_y;
            if (fit.residuals[i] != 0.0) flat = false;
        }
        fit.r_squared = flat ? 1.0 : 0.0;
        return fit;
    }

    exact_sum sxx, sxy;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = densities[i] - mean_x;
        sxx.add(dx * dx);
        sxy.add(dx * (volumes[i] - mean_y));
    }
    const double slope = sxy.value() / sxx.value();
    const double intercept = mean_y - slope * mean_x;

    // Model is v = alpha * rho - beta, so beta carries the opposite sign of
    // the usual intercept.
    fit.degenerate = false;
    fit.alpha = slope;
    fit.beta = -intercept;
    fit.residuals.resize(n);
    exact_sum ss_res;
    exact_sum ss_tot;
    for (std::size_t i = 0; i < n; ++i) {
        fit.residuals[i] = volumes[i] - (fit.alpha * densities[i] - fit.beta);
        ss_res.add(fit.residuals[i] * fit.residuals[i]);
        const double dy = volumes[i] - mean_y;
        ss_tot.add(dy * dy);
    }
    const double tot = ss_tot.value();
    fit.r_squared = tot > 0.0 ? 1.0 - ss_res.value() / tot : 1.0;
    return fit;
}

diagnostics_report build_report(const dataset& ds, const std::vector<double>& eps,
                                const std::vector<double>& densities) {
    if (densities.size() != ds.size())
        throw validation_error("build_report: densities length mismatch");

    diagnostics_report rep;
    rep.g_slack = g_eval(ds, eps);

    rep.worst_slack = std::numeric_limits<double>::infinity();
    for (const auto& [i, j] : cross_class_pairs(ds)) {
        const double slack = distance(ds[i].coords, ds[j].coords) - (eps[i] + eps[j]);
        if (slack < rep.worst_slack) {
            rep.worst_slack = slack;
            rep.worst_i = i;
            rep.worst_j = j;
        }
    }
    if (!std::isfinite(rep.worst_slack)) rep.worst_slack = 0.0; // no cross-class pair

    rep.volumes.resize(ds.size());
    for (std::size_t i = 0; i < ds.size(); ++i)
        rep.volumes[i] = volume(eps[i], ds.dim());

    rep.fit = fit_alpha_beta(rep.volumes, densities);
    return rep;
}

} // namespace epsball
