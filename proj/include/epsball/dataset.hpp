#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

namespace epsball {

// One sample: a point in D-dimensional feature space plus an opaque
// categorical label.
struct labeled_point {
    std::vector<double> coords;
    std::string class_id;
};

// Immutable ordered collection of labeled points sharing one
// dimensionality. Point order is preserved from input; indices are
// stable identifiers used everywhere downstream.
class dataset {
public:
    // Validates and indexes the given points. Throws validation_error on:
    // empty input, dimension mismatch, non-finite coordinates, or two
    // identical points carrying different labels (reported with both
    // 1-based row numbers). Single-class input is permitted and flagged;
    // consumers that need >= 2 classes enforce that themselves.
    static dataset from_points(std::vector<labeled_point> points);

    const std::vector<labeled_point>& points() const { return points_; }
    std::size_t size() const { return points_.size(); }
    std::size_t dim() const { return dim_; }

    // Distinct class ids in order of first appearance.
    const std::vector<std::string>& classes() const { return classes_; }
    bool single_class() const { return classes_.size() < 2; }
    bool has_class(const std::string& c) const;

    const labeled_point& operator[](std::size_t i) const { return points_[i]; }

private:
    dataset() = default;
    std::vector<labeled_point> points_;
    std::size_t dim_ = 0;
    std::vector<std::string> classes_;
};

// Euclidean norm of a-b. Throws validation_error on length mismatch.
double distance(const std::vector<double>& a, const std::vector<double>& b);

// Every unordered pair {i, j} with differing class ids, each exactly once
// (i < j, ascending).
std::vector<std::pair<std::size_t, std::size_t>> cross_class_pairs(const dataset& ds);

// Copy with per-feature z-scoring (x - mean) / stddev. A zero-variance
// feature is centered but not scaled. Requires >= 1 point.
dataset normalize_features(const dataset& ds);

} // namespace epsball
