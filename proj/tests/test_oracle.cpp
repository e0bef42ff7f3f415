#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "epsball/dataset.hpp"
#include "epsball/errors.hpp"
#include "epsball/expansion.hpp"
#include "epsball/oracle.hpp"

using namespace epsball;

namespace {

dataset make(std::vector<labeled_point> pts) { return dataset::from_points(std::move(pts)); }

// direct term-by-term sum of exp(-rho*n) while the step clears min_step
double isolated_direct(double rho, double min_step) {
    double total = 0.0;
    for (int n = 1;; ++n) {
        const double step = std::exp(-rho * n);
        if (!(step > min_step)) break;
        total += step;
    }
    return total;
}

} // namespace

TEST_CASE("isolated_radius matches direct summation") {
    const double r1 = isolated_radius(1.0, 1e-20);
    CHECK(std::fabs(r1 - 0.5819767068693265) <= 1e-14);
    CHECK(std::fabs(r1 - isolated_direct(1.0, 1e-20)) <= 2e-15);
    CHECK(r1 == doctest::Approx(0.58197671).epsilon(1e-8));

    const double r2 = isolated_radius(2.0, 1e-20);
    CHECK(std::fabs(r2 - 0.1565176427496656) <= 1e-14);
    CHECK(std::fabs(r2 - isolated_direct(2.0, 1e-20)) <= 2e-15);

    // at rho = 2 the last surviving sweep is n = 23
    int terms = 0;
    for (int n = 1; std::exp(-2.0 * n) > 1e-20; ++n) ++terms;
    CHECK(terms == 23);

    // decay so fast that even the first step underflows
    CHECK(isolated_radius(50.0, 1e-20) == 0.0);
}

TEST_CASE("isolated_radius decreases strictly in density") {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(1.0, 8.0);
    std::vector<double> rhos{1.0};
    for (int i = 0; i < 30; ++i) rhos.push_back(d(rng));
    std::sort(rhos.begin(), rhos.end());
    rhos.erase(std::unique(rhos.begin(), rhos.end()), rhos.end());
    for (std::size_t i = 1; i < rhos.size(); ++i)
        CHECK(isolated_radius(rhos[i], 1e-20) < isolated_radius(rhos[i - 1], 1e-20));
}

TEST_CASE("isolated_radius validates inputs") {
    CHECK_THROWS_AS(isolated_radius(0.5, 1e-20), validation_error);
    CHECK_THROWS_AS(isolated_radius(1.0, 0.0), validation_error);
    CHECK_THROWS_AS(isolated_radius(1.0, -1.0), validation_error);
}

TEST_CASE("fine-step growth splits a symmetric pair evenly") {
    const dataset ds = make({{{0.0}, "a"}, {{0.4}, "b"}});
    oracle_config cfg;
    cfg.shape = 1.0; // singleton classes, so rho = 1 for both
    const auto eps = fine_step_expand(ds, cfg);
    REQUIRE(eps.size() == 2);
    CHECK(std::fabs(eps[0] - 0.2) <= 1e-12);
    CHECK(std::fabs(eps[1] - 0.2) <= 1e-12);
    CHECK(eps[0] + eps[1] <= 0.4 + 1e-12);
}

TEST_CASE("fine-step growth of a lone ball reaches the isolated budget") {
    const dataset ds = make({{{1.0, 2.0}, "only"}});
    oracle_config cfg;
    cfg.shape = 1.0;
    const auto eps = fine_step_expand(ds, cfg);
    REQUIRE(eps.size() == 1);
    CHECK(std::fabs(eps[0] - isolated_radius(1.0, cfg.min_step)) <= cfg.fine_step);
}

TEST_CASE("fine-step growth tracks the strict solver") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    for (int t = 0; t < 5; ++t) {
        std::vector<labeled_point> pts;
        for (int i = 0; i < 10; ++i)
            pts.push_back({{coord(rng), coord(rng)}, i % 2 ? "a" : "b"});
        const dataset ds = make(std::move(pts));

        run_config rc;
        rc.shape = 1000.0; // narrow kernels keep every density near 1
        const auto res = expand(ds, rc);

        oracle_config oc;
        oc.shape = 1000.0;
        const auto eps = fine_step_expand(ds, oc);

        REQUIRE(eps.size() == ds.size());
        for (std::size_t i = 0; i < ds.size(); ++i)
            CHECK(std::fabs(eps[i] - res.epsilons[i]) <= 2.0 * oc.fine_step);

        // cross-class balls stay disjoint up to micro-step drift
        for (const auto& [i, j] : cross_class_pairs(ds)) {
            const double d = distance(ds[i].coords, ds[j].coords);
            CHECK(d - eps[i] - eps[j] >= -1e-9);
        }
    }
}

TEST_CASE("halving the fine step moves radii by at most the old step") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> coord(0.0, 1.0);
    std::vector<labeled_point> pts;
    for (int i = 0; i < 8; ++i)
        pts.push_back({{coord(rng), coord(rng)}, i % 2 ? "a" : "b"});
    const dataset ds = make(std::move(pts));

    oracle_config coarse;
    coarse.shape = 1000.0;
    coarse.fine_step = 1e-4;
    oracle_config fine = coarse;
    fine.fine_step = 5e-5;

    const auto a = fine_step_expand(ds, coarse);
    const auto b = fine_step_expand(ds, fine);
    for (std::size_t i = 0; i < ds.size(); ++i)
        CHECK(std::fabs(a[i] - b[i]) <= coarse.fine_step + 1e-15);
}

TEST_CASE("fine step too coarse for the density scale is rejected") {
    // wide kernels pile the whole class into each density, exp(-rho) < 100 * fine_step
    std::vector<labeled_point> pts;
    for (int i = 0; i < 9; ++i)
        pts.push_back({{0.1 * i, 0.0}, "a"});
    pts.push_back({{100.0, 0.0}, "b"});
    const dataset ds = dataset::from_points(std::move(pts));

    oracle_config cfg;
    cfg.shape = 0.001;
    CHECK_THROWS_AS(fine_step_expand(ds, cfg), validation_error);

    oracle_config bad;
    bad.fine_step = 0.0;
    CHECK_THROWS_AS(fine_step_expand(ds, bad), validation_error);
    bad.fine_step = 1e-4;
    bad.min_step = 0.0;
    CHECK_THROWS_AS(fine_step_expand(ds, bad), validation_error);
}
