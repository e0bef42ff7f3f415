#include "epsball/regions.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "epsball/errors.hpp"

namespace epsball {

safe_region region_for(const dataset& ds, const radius_result& result, std::size_t i) {
    if (i >= ds.size()) throw validation_error("region_for: point index out of range");
    if (result.epsilons.size() != ds.size())
        throw validation_error("region_for: result does not match the dataset");
    return {ds[i].coords, result.epsilons[i], ds[i].class_id};
}

bool contains(const safe_region& region, const std::vector<double>& x) {
    if (x.size() != region.center.size()) {
        std::ostringstream msg;
        msg << "contains: point has " << x.size() << " features, region has "
            << region.center.size();
        throw validation_error(msg.str());
    }
    // Open ball: the boundary is outside, and a zero radius holds nothing.
    return distance(region.center, x) < region.radius;
}

namespace {

// Fully specified uniform stream: mt19937_64 output mapped to [0, 1) by
// taking the top 53 bits. No std distributions; their algorithms are
// implementation-defined.
class uniform_stream {
public:
    explicit uniform_stream(std::uint64_t seed) : eng_(seed) {}
    double next() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 eng_;
};

} // namespace

std::vector<std::vector<double>> sample(const safe_region& region, std::size_t count,
                                        std::uint64_t rng_seed) {
    if (!(region.radius > 0.0))
        throw validation_error("sample: region has zero radius (an open ball holds nothing)");
    if (count == 0) throw validation_error("sample: count must be positive");
    const std::size_t d = region.center.size();
    if (d == 0) throw validation_error("sample: region has no dimensions");

    uniform_stream u(rng_seed);
    const double two_pi = 8.0 * std::atan(1.0);

    std::vector<std::vector<double>> out;
    out.reserve(count);
    std::vector<double> dir(d);
    while (out.size() < count) {
        // Direction: D standard normals (Box-Muller, two uniforms per pair,
        // second value of an odd tail discarded), normalized to the sphere.
        double norm_sq = 0.0;
        do {
            for (std::size_t k = 0; k < d; k += 2) {
                const double u1 = u.next();
                const double u2 = u.next();
                const double r = std::sqrt(-2.0 * std::log(1.0 - u1));
                dir[k] = r * std::cos(two_pi * u2);
                if (k + 1 < d) dir[k + 1] = r * std::sin(two_pi * u2);
            }
            norm_sq = 0.0;
            for (double v : dir) norm_sq += v * v;
        } while (norm_sq == 0.0);
        const double norm = std::sqrt(norm_sq);

        // Magnitude: radius * U^(1/D) is uniform over the ball.
        const double mag =
            region.radius * std::pow(u.next(), 1.0 / static_cast<double>(d));

        std::vector<double> p(d);
        for (std::size_t k = 0; k < d; ++k) p[k] = region.center[k] + dir[k] / norm * mag;
        // Rounding can graze the closed boundary once in ~1e15 draws; the
        // open-ball contract is kept by redrawing, which stays a pure
        // function of the seed.
        if (distance(region.center, p) < region.radius) out.push_back(std::move(p));
    }
    return out;
}

std::pair<std::size_t, double> nearest_foreign(const dataset& ds, std::size_t i) {
    if (i >= ds.size()) throw validation_error("nearest_foreign: point index out of range");
    if (ds.single_class())
        throw validation_error("nearest_foreign: dataset has no other class");

    std::size_t best = ds.size();
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < ds.size(); ++j) {
        if (ds[j].class_id == ds[i].class_id) continue;
        const double d = distance(ds[i].coords, ds[j].coords);
        if (d < best_d) { // strict: ties keep the smallest index
            best_d = d;
            best = j;
        }
    }
    return {best, best_d};
}

} // namespace epsball
