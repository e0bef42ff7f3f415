#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "epsball/dataset.hpp"
#include "epsball/expansion.hpp"

namespace epsball {

// Open perturbation ball around one sample. radius comes straight from the
// matching radius_result entry.
struct safe_region {
    std::vector<double> center;
    double radius;
    std::string class_id;
};

safe_region region_for(const dataset& ds, const radius_result& result, std::size_t i);

// Open-ball membership: distance(center, x) < radius, strictly. A zero
// radius therefore contains nothing, not even the center. Throws
// validation_error on dimension mismatch.
bool contains(const safe_region& region, const std::vector<double>& x);

// count points uniform in the open ball, deterministic for a fixed seed on
// any platform: mt19937_64 drives uniforms via (x >> 11) * 2^-53, a
// Box-Muller pair per two uniforms gives the direction (normalized), and
// one more uniform u sets the magnitude radius * u^(1/D). Throws
// validation_error for zero radius or zero count.
std::vector<std::vector<double>> sample(const safe_region& region,
                                        std::size_t count, std::uint64_t rng_seed);

// Nearest point of any other class: (index, distance), ties broken by the
// smallest index. Throws validation_error when no other class exists.
std::pair<std::size_t, double> nearest_foreign(const dataset& ds, std::size_t i);

} // namespace epsball
