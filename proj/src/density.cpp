#include "epsball/density.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "epsball/errors.hpp"
#include "epsball/fsum.hpp"
#include "epsball/parallel.hpp"

namespace epsball {

double rbf(double r, double shape) {
    if (r < 0.0 || !std::isfinite(r))
        throw validation_error("rbf: radius must be finite and nonnegative");
    if (shape <= 0.0 || !std::isfinite(shape))
        throw validation_error("rbf: shape must be finite and positive");
    const double sr = shape * r;
    return 1.0 / std::sqrt(1.0 + sr * sr);
}

double class_density(const density_model& model, const std::vector<double>& x,
                     const std::string& c) {
    const dataset& ds = *model.data;
    if (!ds.has_class(c)) throw validation_error("unknown class '" + c + "'");
    if (x.size() != ds.dim()) {
        std::ostringstream msg;
        msg << "query has " << x.size() << " features, dataset has " << ds.dim();
        throw validation_error(msg.str());
    }
    // Exact summation: the value is identical no matter how the class
    // members are ordered.
    exact_sum s;
    for (const auto& p : ds.points())
        if (p.class_id == c) s.add(rbf(distance(p.coords, x), model.shape));
    return s.value();
}

std::vector<double> self_densities(const density_model& model, int threads) {
    const dataset& ds = *model.data;
    std::vector<double> rho(ds.size());
    parallel_for(ds.size(), resolve_threads(threads), [&](std::size_t b, std::size_t e) {
        for (std::size_t i = b; i < e; ++i)
            rho[i] = class_density(model, ds[i].coords, ds[i].class_id);
    });
    return rho;
}

double default_shape(const dataset& ds) {
    if (ds.size() < 2)
        throw validation_error("default_shape needs at least 2 points");

    // Median of same-class pairwise distances; when some class has no pair
    // to contribute, fall back to all pairs so every class is represented.
    bool some_singleton = false;
    for (const auto& c : ds.classes()) {
        std::size_t members = 0;
        for (const auto& p : ds.points())
            if (p.class_id == c) ++members;
        if (members < 2) some_singleton = true;
    }

    std::vector<double> dists;
    for (std::size_t i = 0; i + 1 < ds.size(); ++i)
        for (std::size_t j = i + 1; j < ds.size(); ++j)
            if (some_singleton || ds[i].class_id == ds[j].class_id)
                dists.push_back(distance(ds[i].coords, ds[j].coords));

    if (dists.empty()) return 1.0;
    std::sort(dists.begin(), dists.end());
    const std::size_t n = dists.size();
    const double median =
        (n % 2 == 1) ? dists[n / 2] : 0.5 * (dists[n / 2 - 1] + dists[n / 2]);
    if (median == 0.0) return 1.0; // coincident data, no usable scale
    return 1.0 / median;
}

} // namespace epsball
