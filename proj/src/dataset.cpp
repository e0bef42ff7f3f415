#include "epsball/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "epsball/errors.hpp"
#include "epsball/fsum.hpp"

namespace epsball {

dataset dataset::from_points(std::vector<labeled_point> points) {
    if (points.empty()) throw validation_error("dataset is empty");

    const std::size_t dim = points[0].coords.size();
    if (dim == 0) throw validation_error("points must have at least one feature");

    for (std::size_t i = 0; i < points.size(); ++i) {
        const auto& p = points[i];
        if (p.coords.size() != dim) {
            std::ostringstream msg;
            msg << "dimension mismatch at row " << (i + 1) << ": expected " << dim
                << " features, got " << p.coords.size();
            throw validation_error(msg.str());
        }
        for (double v : p.coords) {
            if (!std::isfinite(v)) {
                std::ostringstream msg;
                msg << "non-finite coordinate at row " << (i + 1);
                throw validation_error(msg.str());
            }
        }
    }

    // Contradictory labels: identical coordinates, different class. Sort an
    // index view so duplicates are adjacent; report the offending rows
    // 1-based in input order.
    std::vector<std::size_t> order(points.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (points[a].coords != points[b].coords) return points[a].coords < points[b].coords;
        return a < b;
    });
    for (std::size_t k = 1; k < order.size(); ++k) {
        std::size_t a = order[k - 1], b = order[k];
        if (points[a].coords == points[b].coords && points[a].class_id != points[b].class_id) {
            if (a > b) std::swap(a, b);
            std::ostringstream msg;
            msg << "contradictory labels at rows " << (a + 1) << "," << (b + 1)
                << ": identical coordinates with classes '" << points[a].class_id
                << "' and '" << points[b].class_id << "'";
            throw validation_error(msg.str());
        }
    }

    dataset ds;
    ds.points_ = std::move(points);
    ds.dim_ = dim;
    for (const auto& p : ds.points_) {
        if (std::find(ds.classes_.begin(), ds.classes_.end(), p.class_id) ==
            ds.classes_.end()) {
            ds.classes_.push_back(p.class_id);
        }
    }
    return ds;
}

bool dataset::has_class(const std::string& c) const {
    return std::find(classes_.begin(), classes_.end(), c) != classes_.end();
}

double distance(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) {
        std::ostringstream msg;
        msg << "distance: length mismatch (" << a.size() << " vs " << b.size() << ")";
        throw validation_error(msg.str());
    }
    double sq = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double d = a[k] - b[k];
        sq += d * d;
    }
    return std::sqrt(sq);
}

std::vector<std::pair<std::size_t, std::size_t>> cross_class_pairs(const dataset& ds) {
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    const auto& pts = ds.points();
    for (std::size_t i = 0; i + 1 < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
            if (pts[i].class_id != pts[j].class_id) pairs.emplace_back(i, j);
    return pairs;
}

dataset normalize_features(const dataset& ds) {
    const std::size_t n = ds.size();
    const std::size_t d = ds.dim();

    std::vector<double> mean(d), sd(d);
    for (std::size_t k = 0; k < d; ++k) {
        exact_sum s;
        for (std::size_t i = 0; i < n; ++i) s.add(ds[i].coords[k]);
        mean[k] = s.value() / static_cast<double>(n);
        exact_sum sq;
        for (std::size_t i = 0; i < n; ++i) {
            const double c = ds[i].coords[k] - mean[k];
            sq.add(c * c);
        }
        sd[k] = std::sqrt(sq.value() / static_cast<double>(n));
    }

    std::vector<labeled_point> out(ds.points());
    for (auto& p : out)
        for (std::size_t k = 0; k < d; ++k) {
            p.coords[k] -= mean[k];
            if (sd[k] > 0.0) p.coords[k] /= sd[k];
        }
    return dataset::from_points(std::move(out));
}

} // namespace epsball
