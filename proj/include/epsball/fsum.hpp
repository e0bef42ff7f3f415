#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace epsball {

// Exact accumulator for IEEE doubles using Shewchuk's growing-partials
// scheme. The rounded total is independent of insertion order, which is
// what keeps density sums bit-stable under row permutations and across
// worker counts. Inputs must be finite.
class exact_sum {
public:
    void add(double x) {
        std::size_t i = 0;
        for (std::size_t j = 0; j < partials_.size(); ++j) {
            double y = partials_[j];
            if (std::fabs(x) < std::fabs(y)) std::swap(x, y);
            double hi = x + y;
            double lo = y - (hi - x);
            if (lo != 0.0) partials_[i++] = lo;
            x = hi;
        }
        partials_.resize(i);
        partials_.push_back(x);
    }

    // Correctly rounded value of the exact running sum (round-half-even,
    // as if the real-number total were rounded once).
    double value() const {
        std::size_t n = partials_.size();
        if (n == 0) return 0.0;
        double hi = partials_[--n];
        double lo = 0.0;
        while (n > 0) {
            double x = hi;
            double y = partials_[--n];
            hi = x + y;
            lo = y - (hi - x);
            if (lo != 0.0) break;
        }
        // Half-ulp fixup: a discarded tail with the same sign as lo can
        // flip a round-half-even tie on hi.
        if (n > 0 && ((lo < 0.0 && partials_[n - 1] < 0.0) ||
                      (lo > 0.0 && partials_[n - 1] > 0.0))) {
            double y = lo * 2.0;
            double x = hi + y;
            if (y == x - hi) hi = x;
        }
        return hi;
    }

    void reset() { partials_.clear(); }

private:
    std::vector<double> partials_;
};

template <typename It>
double fsum(It first, It last) {
    exact_sum s;
    for (; first != last; ++first) s.add(*first);
    return s.value();
}

} // namespace epsball
