#pragma once

#include <array>
#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

// Projection of every point onto the first two principal components of the
// centered data, in input order. Component signs are canonicalized (the
// largest-magnitude loading is made positive) so the output is
// deterministic. One-dimensional data maps to (x - mean, 0).
std::vector<std::array<double, 2>> project_2d(const dataset& ds);

} // namespace epsball
