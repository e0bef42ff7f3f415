#pragma once

#include <string>
#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

// Per-class RBF mixture over a dataset. shape is the kernel width
// parameter gamma; larger gamma means narrower kernels. Immutable;
// evaluations are pure and safe to run concurrently.
struct density_model {
    const dataset* data;
    double shape;
};

// Inverse-multiquadric kernel 1 / sqrt(1 + (shape*r)^2). Value 1 at r=0,
// strictly decreasing in r, range (0, 1]. Throws validation_error for
// r < 0 or shape <= 0.
double rbf(double r, double shape);

// Sampling density of class c at x: the kernel sum over every point of
// class c, self-term included when x is one of them (so the density at a
// sample point of its own class is always >= 1). Exact summation makes the
// result independent of row order. Throws validation_error for an unknown
// class or a dimension mismatch.
double class_density(const density_model& model, const std::vector<double>& x,
                     const std::string& c);

// Density of each point under its own class, in index order.
std::vector<double> self_densities(const density_model& model, int threads = 0);

// Width heuristic: 1 / median of same-class pairwise distances. Falls back
// to 1 / median of all pairwise distances when some class is a singleton
// (no same-class pairs for it), and to 1.0 when the median is zero.
// Requires >= 2 points.
double default_shape(const dataset& ds);

} // namespace epsball
