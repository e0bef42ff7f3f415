#include "epsball/expansion.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <vector>

#include "epsball/density.hpp"
#include "epsball/errors.hpp"
#include "epsball/parallel.hpp"

namespace epsball {

const char* to_string(stop_reason r) {
    switch (r) {
        case stop_reason::collision: return "collision";
        case stop_reason::step_underflow: return "step_underflow";
        case stop_reason::sweep_cap: return "sweep_cap";
    }
    return "unknown";
}

double step_size(double rho, std::size_t n) {
    return std::exp(-rho * static_cast<double>(n));
}

namespace {

// Pairwise distances are cached (lower triangle) up to this point count;
// beyond it they are recomputed on demand.
constexpr std::size_t cache_limit = 2048;

class pair_distances {
public:
    pair_distances(const dataset& ds, int threads) : ds_(&ds), n_(ds.size()) {
        cached_ = n_ > 1 && n_ <= cache_limit;
        if (!cached_) return;
        tri_.resize(n_ * (n_ - 1) / 2);
        parallel_for(n_, threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i)
                for (std::size_t j = 0; j < i; ++j)
                    tri_[i * (i - 1) / 2 + j] = distance((*ds_)[i].coords, (*ds_)[j].coords);
        });
    }

    double operator()(std::size_t i, std::size_t j) const {
        if (!cached_) return distance((*ds_)[i].coords, (*ds_)[j].coords);
        if (i < j) std::swap(i, j);
        return tri_[i * (i - 1) / 2 + j];
    }

private:
    const dataset* ds_;
    std::size_t n_;
    bool cached_;
    std::vector<double> tri_;
};

void validate_config(const run_config& cfg) {
    if (!(cfg.min_step > 0.0) || !std::isfinite(cfg.min_step))
        throw validation_error("min_step must be positive and finite");
    if (cfg.max_sweeps < 1)
        throw validation_error("max_sweeps must be at least 1");
    if (cfg.shape < 0.0 || !std::isfinite(cfg.shape))
        throw validation_error("shape must be positive (or 0 for the default heuristic)");
}

// Literal transcription of the per-point loop: collision checks and growth
// happen in place, in row order, so results depend on that order. Kept as
// an opt-in comparison path; the snapshot sweep below is the contract.
void sequential_sweeps(const dataset& ds, const run_config& cfg,
                       const pair_distances& dist, const std::vector<double>& rho,
                       radius_result& out) {
    const std::size_t n_pts = ds.size();
    const bool strict = cfg.mode == run_mode::strict;
    const bool has_foreign = !ds.single_class();
    std::vector<char> active(n_pts, 1);
    std::size_t n_active = n_pts;
    auto& eps = out.epsilons;

    std::size_t n = 0;
    while (n_active > 0 && n < cfg.max_sweeps) {
        ++n;
        for (std::size_t i = 0; i < n_pts; ++i) {
            if (!active[i]) continue;
            double gap = std::numeric_limits<double>::infinity();
            if (has_foreign) {
                for (std::size_t j = 0; j < n_pts; ++j)
                    if (ds[j].class_id != ds[i].class_id)
                        gap = std::min(gap, dist(i, j) - eps[i] - eps[j]);
                if (gap <= 0.0) {
                    active[i] = 0;
                    --n_active;
                    out.stop_reasons[i] = stop_reason::collision;
                    continue;
                }
            }
            double step = step_size(rho[i], n);
            if (step <= cfg.min_step) {
                active[i] = 0;
                --n_active;
                out.stop_reasons[i] = stop_reason::step_underflow;
                continue;
            }
            if (strict && has_foreign) step = std::min(step, gap / 2.0);
            eps[i] += step;
            out.last_steps[i] = step;
        }
    }
    out.sweeps = n;
}

void snapshot_sweeps(const dataset& ds, const run_config& cfg,
                     const pair_distances& dist, const std::vector<double>& rho,
                     int threads, radius_result& out) {
    const std::size_t n_pts = ds.size();
    const bool strict = cfg.mode == run_mode::strict;
    const bool has_foreign = !ds.single_class();

    auto& eps = out.epsilons;
    std::vector<double> prev(n_pts, 0.0);
    std::vector<double> gap(n_pts, std::numeric_limits<double>::infinity());
    std::vector<char> active(n_pts, 1);
    std::size_t n_active = n_pts;

    std::size_t n = 0;
    while (n_active > 0 && n < cfg.max_sweeps) {
        ++n;
        prev = eps;

        // Phase 1: against the previous sweep's radii, stop every point
        // whose ball already meets a foreign ball. The smallest cross-class
        // slack doubles as the strict clamp bound in phase 2 (same snapshot).
        if (has_foreign) {
            parallel_for(n_pts, threads, [&](std::size_t b, std::size_t e) {
                for (std::size_t i = b; i < e; ++i) {
                    if (!active[i]) continue;
                    double g = std::numeric_limits<double>::infinity();
                    for (std::size_t j = 0; j < n_pts; ++j)
                        if (ds[j].class_id != ds[i].class_id)
                            g = std::min(g, dist(i, j) - prev[i] - prev[j]);
                    gap[i] = g;
                    if (g <= 0.0) {
                        active[i] = 0;
                        out.stop_reasons[i] = stop_reason::collision;
                    }
                }
            });
        }

        // Phase 2: grow every survivor by the decayed step; underflow is
        // judged on the raw step, the strict clamp on the snapshot gap.
        parallel_for(n_pts, threads, [&](std::size_t b, std::size_t e) {
            for (std::size_t i = b; i < e; ++i) {
                if (!active[i]) continue;
                double step = step_size(rho[i], n);
                if (step <= cfg.min_step) {
                    active[i] = 0;
                    out.stop_reasons[i] = stop_reason::step_underflow;
                    continue;
                }
                if (strict && has_foreign) {
                    const double clamp = std::max(0.0, gap[i] / 2.0);
                    if (clamp < step) step = clamp;
                    if (step == 0.0) {
                        active[i] = 0;
                        out.stop_reasons[i] = stop_reason::collision;
                        continue;
                    }
                }
                eps[i] = prev[i] + step;
                out.last_steps[i] = step;
            }
        });

        n_active = 0;
        for (std::size_t i = 0; i < n_pts; ++i)
            if (active[i]) ++n_active;
    }
    out.sweeps = n;
}

} // namespace

radius_result expand(const dataset& ds, const run_config& cfg) {
    validate_config(cfg);
    if (ds.single_class() && !cfg.allow_single_class)
        throw validation_error(
            "dataset has a single class; enable single-class mode to expand anyway");

    std::optional<dataset> normalized;
    const dataset* work = &ds;
    if (cfg.normalize) {
        normalized = normalize_features(ds);
        work = &*normalized;
    }

    radius_result out;
    out.config = cfg;
    if (cfg.shape > 0.0)
        out.shape_used = cfg.shape;
    else if (work->size() < 2)
        out.shape_used = 1.0; // lone point: density is the self-term, width moot
    else
        out.shape_used = default_shape(*work);

    const int threads = resolve_threads(cfg.threads);
    const density_model model{work, out.shape_used};
    out.densities = self_densities(model, threads);

    const std::size_t n_pts = work->size();
    out.epsilons.assign(n_pts, 0.0);
    out.stop_reasons.assign(n_pts, stop_reason::sweep_cap);
    out.last_steps.assign(n_pts, 0.0);

    const pair_distances dist(*work, threads);
    if (cfg.sequential)
        sequential_sweeps(*work, cfg, dist, out.densities, out);
    else
        snapshot_sweeps(*work, cfg, dist, out.densities, threads, out);
    return out;
}

} // namespace epsball
