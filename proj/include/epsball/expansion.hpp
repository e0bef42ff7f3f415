#pragma once

#include <cstddef>
#include <vector>

#include "epsball/dataset.hpp"

namespace epsball {

enum class run_mode {
    paper,  // collision checked before growth only; one-step overlap possible
    strict, // growth clamped to half the remaining cross-class gap; no overlap
};

enum class stop_reason {
    collision,      // a foreign ball was reached (or the clamp hit zero)
    step_underflow, // the next step fell to min_step or below
    sweep_cap,      // max_sweeps elapsed while still active
};

const char* to_string(stop_reason r);

struct run_config {
    double min_step = 1e-20;     // smallest step still applied
    double shape = 0.0;          // kernel width; 0 means the median heuristic
    run_mode mode = run_mode::strict;
    std::size_t max_sweeps = 10000; // safety cap; default runs stop by sweep 47
    bool normalize = false;      // z-score features before any geometry
    bool allow_single_class = false;
    bool sequential = false;     // compatibility path: in-place row-order sweeps
    int threads = 0;             // 0: EPSBALL_THREADS env, then hardware
};

struct radius_result {
    std::vector<double> epsilons;       // final radius per point
    std::vector<stop_reason> stop_reasons;
    std::size_t sweeps = 0;             // sweep counter value at termination
    std::vector<double> densities;      // cached own-class density per point
    run_config config;                  // snapshot of the request
    double shape_used = 0.0;            // resolved kernel width
    std::vector<double> last_steps;     // final applied step per point (0 if none)
};

// Sweep-n increment exp(-rho * n). Inputs are validated by callers.
double step_size(double rho, std::size_t n);

// Iterative radius expansion. All radii start at 0; sweeps n = 1, 2, ...
// run two phases against a snapshot of the previous sweep's radii:
// phase 1 stops any point whose ball already touches a foreign ball
// (d <= eps_i + eps_j); phase 2 grows every still-active point by
// exp(-rho_i * n), stopping on underflow when the step is <= min_step.
// Strict mode first clamps the step to half the smallest remaining
// cross-class gap, and a clamp to zero stops the point as a collision.
// Terminates when every point has stopped or max_sweeps is reached
// (remaining active points are then marked sweep_cap).
//
// Results are bit-identical across runs, worker counts, and row
// permutations (composed with the inverse permutation).
// Throws validation_error on a single-class dataset unless
// cfg.allow_single_class is set.
radius_result expand(const dataset& ds, const run_config& cfg);

} // namespace epsball
