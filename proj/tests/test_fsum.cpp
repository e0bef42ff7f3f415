#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "epsball/fsum.hpp"

using epsball::exact_sum;
using epsball::fsum;

TEST_CASE("exact_sum recovers cancellation that plain addition loses") {
    std::vector<double> vals{1e100, 1.0, -1e100};
    CHECK(fsum(vals.begin(), vals.end()) == 1.0);

    std::vector<double> tiny{1.0, 1e-16, 1e-16, 1e-16, 1e-16, 1e-16,
                             1e-16, 1e-16, 1e-16, 1e-16, 1e-16};
    // naive left-to-right addition drops every 1e-16 against 1.0
    double naive = 0.0;
    for (double v : tiny) naive += v;
    CHECK(naive == 1.0);
    CHECK(fsum(tiny.begin(), tiny.end()) == 1.0 + 1e-15);
}

TEST_CASE("exact_sum rounds ties like a single addition") {
    // 1 + 2^-53 is exactly halfway between 1 and the next double; the extra
    // 1e-16 tail must tip it up.
    std::vector<double> vals{1.0, 0x1.0p-53, 1e-32};
    CHECK(fsum(vals.begin(), vals.end()) == 1.0 + 0x1.0p-52);
}

TEST_CASE("exact_sum is independent of insertion order") {
    std::mt19937_64 rng(1234);
    std::uniform_real_distribution<double> mag(-1.0, 1.0);
    std::uniform_int_distribution<int> scale(-40, 40);
    std::vector<double> vals(400);
    for (auto& v : vals) v = std::ldexp(mag(rng), scale(rng));

    const double reference = fsum(vals.begin(), vals.end());
    for (int trial = 0; trial < 20; ++trial) {
        std::shuffle(vals.begin(), vals.end(), rng);
        CHECK(fsum(vals.begin(), vals.end()) == reference);
    }
}

TEST_CASE("exact_sum basics") {
    exact_sum s;
    CHECK(s.value() == 0.0);
    s.add(2.5);
    s.add(-1.25);
    CHECK(s.value() == 1.25);
    s.reset();
    CHECK(s.value() == 0.0);
}
